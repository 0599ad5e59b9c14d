#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"

#include "cavsim/cavsim.h"

namespace {

cavsim_system_params weak2_params() {
    cavsim_system_params p{};
    REQUIRE(cavsim_preset_get("weak2", &p) == CAVSIM_OK);
    return p;
}

struct Str {
    char* text = nullptr;
    ~Str() { cavsim_string_free(text); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(cavsim_version()) == "0.1.0");
    CHECK(std::string(cavsim_status_name(CAVSIM_OK)) == "OK");
    CHECK(std::string(cavsim_status_name(CAVSIM_ERROR_PARSE)) == "ParseError");
}

TEST_CASE("presets are reachable") {
    CHECK(cavsim_preset_count() == 5);
    bool has_strong = false;
    for (size_t i = 0; i < cavsim_preset_count(); ++i) {
        if (std::string(cavsim_preset_name(i)) == "strong") has_strong = true;
    }
    CHECK(has_strong);

    cavsim_system_params p{};
    CHECK(cavsim_preset_get("unknown", &p) == CAVSIM_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(cavsim_last_error_message()).find("unknown") != std::string::npos);
}

TEST_CASE("scattering entry points") {
    const cavsim_system_params p = weak2_params();
    double d1 = 0, d2 = 0, dge = 0;
    REQUIRE(cavsim_detunings(&p, 0.25, &d1, &d2, &dge) == CAVSIM_OK);
    CHECK(d1 == 0.25);

    cavsim_complex r{0, 0}, t{0, 0};
    REQUIRE(cavsim_scatter_coefficients(&p, 0.0, &r, &t) == CAVSIM_OK);
    CHECK(r.re == doctest::Approx(-1.0 / 33.0).epsilon(1e-12));
    CHECK(t.re == doctest::Approx(32.0 / 33.0).epsilon(1e-12));

    double r0 = 0, t0 = 0, pr = 0;
    REQUIRE(cavsim_resonant_coefficients(1.0, 1.0, 2.0, &r0, &t0, &pr) == CAVSIM_OK);
    CHECK(pr == doctest::Approx(31.0 / 33.0).epsilon(1e-14));

    CHECK(cavsim_resonant_coefficients(0.0, 0.0, 0.0, &r0, &t0, &pr) ==
          CAVSIM_ERROR_DEGENERATE_DENOMINATOR);
    CHECK(std::strlen(cavsim_last_error_message()) > 0);

    cavsim_complex empty{0, 0};
    REQUIRE(cavsim_empty_cavity_reflection(1.0, 0.0, &empty) == CAVSIM_OK);
    CHECK(empty.re == -1.0);
    CHECK(cavsim_scatter_coefficients(nullptr, 0.0, &r, &t) == CAVSIM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("trajectory handles") {
    const cavsim_system_params p = weak2_params();
    cavsim_pulse pulse{0.0, 1.0 / 200.0, 0.0, 1};
    double dt = 0.0;
    REQUIRE(cavsim_default_time_step(&p, &pulse, &dt) == CAVSIM_OK);
    CHECK(dt == doctest::Approx(0.001 / 2.0));

    cavsim_trajectory* traj = nullptr;
    REQUIRE(cavsim_integrate_amplitudes(&p, &pulse, -1200.0, 1200.0, dt * 6, &traj) == CAVSIM_OK);
    CHECK(cavsim_trajectory_size(traj) > 100);

    double residual = -1.0;
    REQUIRE(cavsim_energy_balance(traj, &p, &residual) == CAVSIM_OK);
    CHECK(residual < 1e-6);

    cavsim_complex r{0, 0}, t{0, 0};
    REQUIRE(cavsim_extract_scatter_coefficients(traj, &pulse, &r, &t) == CAVSIM_OK);
    CHECK(std::abs(r.re + 1.0 / 33.0) < 1e-3);
    CHECK(std::abs(t.re - 32.0 / 33.0) < 1e-3);

    Str csv;
    REQUIRE(cavsim_trajectory_csv(traj, 1000, &csv.text) == CAVSIM_OK);
    CHECK(std::string(csv.text).rfind("t,re_C", 0) == 0);

    cavsim_trajectory_destroy(traj);

    // coarse step is rejected
    cavsim_trajectory* bad = nullptr;
    CHECK(cavsim_integrate_amplitudes(&p, &pulse, -1200.0, 1200.0, 1.0, &bad) ==
          CAVSIM_ERROR_STEP_TOO_LARGE);
}

TEST_CASE("gate run and report document") {
    const cavsim_complex amps[4] = {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    cavsim_gate_report* report = nullptr;
    REQUIRE(cavsim_gate_run(CAVSIM_GATE_CPHASE, amps, 4, 1.0, &report) == CAVSIM_OK);

    double fidelity = 0, efficiency = 0;
    REQUIRE(cavsim_gate_report_fidelity(report, &fidelity) == CAVSIM_OK);
    REQUIRE(cavsim_gate_report_efficiency(report, &efficiency) == CAVSIM_OK);
    CHECK(fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(efficiency == doctest::Approx(1.0).epsilon(1e-12));

    Str json;
    REQUIRE(cavsim_gate_report_json(report, &json.text) == CAVSIM_OK);
    const auto doc = nlohmann::json::parse(json.text);
    CHECK(doc.at("gate") == "cphase");
    CHECK(doc.at("input").at("photons").size() == 2);

    // feeding the emitted input states back reproduces the same document
    cavsim_gate_report* again = nullptr;
    const std::string photons = doc.at("input").at("photons").dump();
    REQUIRE(cavsim_gate_run_state_json(CAVSIM_GATE_CPHASE, photons.c_str(), 1.0, &again) ==
            CAVSIM_OK);
    Str json2;
    REQUIRE(cavsim_gate_report_json(again, &json2.text) == CAVSIM_OK);
    CHECK(std::string(json.text) == json2.text);

    cavsim_gate_report_destroy(report);
    cavsim_gate_report_destroy(again);

    // non-normalized inputs are an InvalidSpec
    const cavsim_complex bad[4] = {{1, 0}, {1, 0}, {1, 0}, {0, 0}};
    cavsim_gate_report* none = nullptr;
    CHECK(cavsim_gate_run(CAVSIM_GATE_CPHASE, bad, 4, 1.0, &none) == CAVSIM_ERROR_INVALID_SPEC);
}

TEST_CASE("truth table through the C boundary") {
    std::vector<cavsim_complex> entries(64);
    size_t dim = 0;
    REQUIRE(cavsim_truth_table(CAVSIM_GATE_CCPHASE, 1.0, entries.data(), entries.size(), &dim) ==
            CAVSIM_OK);
    REQUIRE(dim == 8);
    for (size_t row = 0; row < dim; ++row) {
        for (size_t col = 0; col < dim; ++col) {
            const double expected = row != col ? 0.0 : (row == 7 ? -1.0 : 1.0);
            CHECK(std::abs(entries[row * dim + col].re - expected) < 1e-12);
            CHECK(std::abs(entries[row * dim + col].im) < 1e-12);
        }
    }
    CHECK(cavsim_truth_table(CAVSIM_GATE_CCPHASE, 1.0, entries.data(), 4, &dim) ==
          CAVSIM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("averaged metrics") {
    double f_poly = 0, e_poly = 0, f_quad = 0, e_quad = 0;
    REQUIRE(cavsim_closed_form_averages(CAVSIM_GATE_CPHASE, 0.5, &f_poly, &e_poly) == CAVSIM_OK);
    REQUIRE(cavsim_quadrature_averages(CAVSIM_GATE_CPHASE, 0.5, 16, &f_quad, &e_quad) ==
            CAVSIM_OK);
    CHECK(std::abs(f_poly - f_quad) < 1e-10);
    CHECK(std::abs(e_poly - e_quad) < 1e-10);
    CHECK(cavsim_quadrature_averages(CAVSIM_GATE_CPHASE, 0.5, 4, &f_quad, &e_quad) ==
          CAVSIM_ERROR_INVALID_SAMPLE_COUNT);
}

TEST_CASE("sweep tables") {
    cavsim_table* table = nullptr;
    REQUIRE(cavsim_sweep_fidelity(0.1, 5.0, 99, 0.1, 5.0, 99, CAVSIM_SELECT_BOTH, &table) ==
            CAVSIM_OK);
    CHECK(cavsim_table_rows(table) == 99 * 99);
    CHECK(cavsim_table_columns(table) == 7);
    CHECK(std::string(cavsim_table_column_name(table, 3)) == "F_cp");

    double value = 0.0;
    REQUIRE(cavsim_table_value(table, 0, 0, &value) == CAVSIM_OK);
    CHECK(value == doctest::Approx(0.1));
    CHECK(cavsim_table_value(table, 0, 99, &value) == CAVSIM_ERROR_INVALID_ARGUMENT);

    Str csv;
    REQUIRE(cavsim_table_csv(table, &csv.text) == CAVSIM_OK);
    CHECK(std::string(csv.text).rfind("lambda_over_kappa,", 0) == 0);
    cavsim_table_destroy(table);

    CHECK(cavsim_sweep_resonant(0.0, 5.0, 0, &table) == CAVSIM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("network parsing via the C API") {
    const char* text = "PATHS 3\nINJECT photon 1 AT 0 STEP 0\nPBS 0 1 2\n";
    cavsim_network* network = nullptr;
    REQUIRE(cavsim_network_parse(text, &network) == CAVSIM_OK);
    size_t count = 0;
    REQUIRE(cavsim_network_photon_count(network, &count) == CAVSIM_OK);
    CHECK(count == 1);

    const cavsim_complex amps[2] = {{0.6, 0.0}, {0.8, 0.0}};
    Str state;
    REQUIRE(cavsim_network_run_json(network, amps, 2, 1.0, &state.text) == CAVSIM_OK);
    const auto doc = nlohmann::json::parse(state.text);
    CHECK(doc.is_array());
    CHECK(doc.size() == 2);
    cavsim_network_destroy(network);

    cavsim_network* bad = nullptr;
    CHECK(cavsim_network_parse("PATHS 2\nHWP 1 30\n", &bad) != CAVSIM_OK);
    CHECK(cavsim_network_parse("PATHS x\n", &bad) == CAVSIM_ERROR_PARSE);
    CHECK(cavsim_last_error_line() == 1);
    CHECK(cavsim_last_error_column() == 7);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include <cmath>

#include "cavsim/metrics.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("cavsim_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string command = std::string("\"") + CAVSIM_CLI_PATH + "\" " + args + " > " +
                                out.string() + " 2> " + err.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("gate --help").exit_code == 0);
}

TEST_CASE("unknown flags are usage errors") {
    const RunResult r = run_cli("coeffs --no-such-flag 3");
    CHECK(r.exit_code == 2);
}

TEST_CASE("missing subcommand is a usage error") {
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("resonant coefficients for the weak2 preset") {
    const RunResult r = run_cli("coeffs --preset weak2 --resonant");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "r0,t0,p");
    double r0, t0, p;
    REQUIRE(std::sscanf(lines[1].c_str(), "%lf,%lf,%lf", &r0, &t0, &p) == 3);
    CHECK(r0 == doctest::Approx(-0.030303).epsilon(1e-4));
    CHECK(t0 == doctest::Approx(0.969697).epsilon(1e-4));
    CHECK(p == doctest::Approx(0.939394).epsilon(1e-4));
}

TEST_CASE("decoupled emitter coefficients") {
    const RunResult r = run_cli("coeffs --kappa 1 --gamma 1 --lambda 0 --resonant");
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out)[1] == "-1,0,-1");
}

TEST_CASE("validation failure leaves no output file behind") {
    const fs::path target = scratch_dir() / "never_written.csv";
    const RunResult r =
        run_cli("coeffs --preset weak2 --resonant --points banana --out " + target.string());
    CHECK(r.exit_code == 2);
    CHECK(!fs::exists(target));
}

TEST_CASE("frequency scan emits the documented CSV columns") {
    const RunResult r = run_cli("coeffs --preset weak2 --points 11");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "omega,re_r,im_r,re_t,im_t");
}

TEST_CASE("truth table via the gate subcommand") {
    const RunResult r = run_cli("gate cphase --p 1 --truth-table");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("basis").size() == 4);
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            const double expected = row != col ? 0.0 : (row == 3 ? -1.0 : 1.0);
            CHECK(doc.at("rows")[row][col].at("re").get<double>() ==
                  doctest::Approx(expected).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("three-photon truth table via the gate subcommand") {
    const RunResult r = run_cli("gate ccphase --p 1 --truth-table");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.at("basis").size() == 8);
    CHECK(doc.at("basis")[7] == "LLL");
    for (int row = 0; row < 8; ++row) {
        for (int col = 0; col < 8; ++col) {
            const double expected = row != col ? 0.0 : (row == 7 ? -1.0 : 1.0);
            CHECK(doc.at("rows")[row][col].at("re").get<double>() ==
                  doctest::Approx(expected).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("reported fidelity equals the overlap of the analytic states") {
    const RunResult r = run_cli("gate cphase --theta1 0.3 --theta2 1.1 --p 0.9");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);

    const cavsim::CPhaseSpec spec{std::cos(0.3), std::sin(0.3), std::cos(1.1), std::sin(1.1)};
    const cavsim::StateVector ideal = cavsim::analytic_state_cphase(spec, 1.0);
    const cavsim::StateVector realistic = cavsim::analytic_state_cphase(spec, 0.9);
    const double expected = cavsim::fidelity_joint(ideal, realistic);
    CHECK(std::abs(doc.at("fidelity").get<double>() - expected) < 1e-12);
    CHECK(std::abs(doc.at("efficiency").get<double>() - realistic.norm2()) < 1e-12);
}

TEST_CASE("gate report, input-state round trip") {
    const fs::path first = scratch_dir() / "gate1.json";
    const RunResult r1 =
        run_cli("gate cphase --theta1 0.3 --theta2 1.1 --p 0.9 --out " + first.string());
    REQUIRE(r1.exit_code == 0);

    const auto doc = nlohmann::json::parse(slurp(first));
    CHECK(doc.at("fidelity").get<double>() > 0.5);
    CHECK(doc.at("outcomes").size() == 2);

    const fs::path input = scratch_dir() / "input.json";
    std::ofstream(input) << doc.at("input").dump();

    const fs::path second = scratch_dir() / "gate2.json";
    const RunResult r2 = run_cli("gate cphase --input-state " + input.string() +
                                 " --p 0.9 --out " + second.string());
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(first) == slurp(second));
}

TEST_CASE("non-normalized amplitudes exit with code 2") {
    const RunResult r = run_cli("gate cphase --a1 1 --b1 1 --a2 1 --b2 0 --p 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("gate needs either p or physical parameters") {
    const RunResult r = run_cli("gate cphase --theta1 0.3 --theta2 1.1");
    CHECK(r.exit_code == 2);
    const RunResult ok = run_cli("gate cphase --theta1 0.3 --theta2 1.1 --preset weak2");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("fig 5 sweep rows are monotone in t0") {
    const RunResult r = run_cli("sweep --fig 5 --max 5 --points 200");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 201);
    double prev_t0 = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        double ratio, r0, t0, p;
        REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf", &ratio, &r0, &t0, &p) == 4);
        CHECK(t0 > prev_t0);
        prev_t0 = t0;
    }
}

TEST_CASE("zero sweep points exit with code 2") {
    CHECK(run_cli("sweep --fig 5 --points 0").exit_code == 2);
    CHECK(run_cli("sweep --fig 6 --points 0").exit_code == 2);
}

TEST_CASE("coarse time step fails oracle verification with StepTooLarge") {
    const RunResult r = run_cli("oracle-verify --preset weak2 --dt-scale 100");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("StepTooLarge") != std::string::npos);
}

TEST_CASE("oracle verification passes on the empty preset") {
    const RunResult r =
        run_cli("oracle-verify --preset empty --sigma-frac 0.005 --window 12 --dt-scale 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("oracle verification passes on the weak2 preset") {
    const RunResult r = run_cli(
        "oracle-verify --preset weak2 --sigma-frac 0.005 --window 12 --dt-scale 4 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("pass").get<bool>());
    CHECK(doc.at("energy_residual").get<double>() < 1e-6);
}

TEST_CASE("trajectory dump writes the CSV columns") {
    const fs::path csv = scratch_dir() / "traj.csv";
    const RunResult r = run_cli(
        "oracle-verify --preset empty --sigma-frac 0.005 --window 12 --dt-scale 4 "
        "--dump-trajectory " + csv.string());
    REQUIRE(r.exit_code == 0);
    const std::string content = slurp(csv);
    CHECK(content.rfind("t,re_C,im_C,re_D,im_D,re_E,im_E,re_Aout,im_Aout,re_Bout,im_Bout\n", 0) ==
          0);
}

TEST_CASE("json format flag changes the sweep rendering") {
    const RunResult r = run_cli("sweep --fig 5 --points 3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("rows").size() == 3);
}

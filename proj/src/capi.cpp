#include "cavsim/cavsim.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "cavsim/metrics.hpp"
#include "cavsim/presets.hpp"
#include "cavsim/time_domain.hpp"

namespace {

thread_local std::string g_last_error;
thread_local int g_last_line = 0;
thread_local int g_last_column = 0;

cavsim_status map_code(cavsim::ErrorCode code) {
    using cavsim::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return CAVSIM_ERROR_INVALID_ARGUMENT;
        case ErrorCode::DegenerateDenominator: return CAVSIM_ERROR_DEGENERATE_DENOMINATOR;
        case ErrorCode::StepTooLarge: return CAVSIM_ERROR_STEP_TOO_LARGE;
        case ErrorCode::WindowTooShort: return CAVSIM_ERROR_WINDOW_TOO_SHORT;
        case ErrorCode::TooBroadband: return CAVSIM_ERROR_TOO_BROADBAND;
        case ErrorCode::RegisterCollision: return CAVSIM_ERROR_REGISTER_COLLISION;
        case ErrorCode::RegisterMismatch: return CAVSIM_ERROR_REGISTER_MISMATCH;
        case ErrorCode::UnknownRegister: return CAVSIM_ERROR_UNKNOWN_REGISTER;
        case ErrorCode::UnsupportedAngle: return CAVSIM_ERROR_UNSUPPORTED_ANGLE;
        case ErrorCode::PathOccupied: return CAVSIM_ERROR_PATH_OCCUPIED;
        case ErrorCode::ZeroNormState: return CAVSIM_ERROR_ZERO_NORM_STATE;
        case ErrorCode::ParseError: return CAVSIM_ERROR_PARSE;
        case ErrorCode::ValidationError: return CAVSIM_ERROR_VALIDATION;
        case ErrorCode::InvalidSpec: return CAVSIM_ERROR_INVALID_SPEC;
        case ErrorCode::InvalidSampleCount: return CAVSIM_ERROR_INVALID_SAMPLE_COUNT;
    }
    return CAVSIM_ERROR_INTERNAL;
}

template <typename Fn>
cavsim_status guarded(Fn&& fn) {
    g_last_error.clear();
    g_last_line = 0;
    g_last_column = 0;
    try {
        fn();
        return CAVSIM_OK;
    } catch (const cavsim::Error& e) {
        g_last_error = e.what();
        g_last_line = e.line() > 0 ? e.line() : 0;
        g_last_column = e.column() > 0 ? e.column() : 0;
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CAVSIM_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return CAVSIM_ERROR_INTERNAL;
    }
}

cavsim::SystemParams from_c(const cavsim_system_params& p) {
    cavsim::SystemParams out;
    out.omega1 = p.omega1;
    out.omega2 = p.omega2;
    out.omega_ge = p.omega_ge;
    out.kappa1 = p.kappa1;
    out.kappa2 = p.kappa2;
    out.gamma = p.gamma;
    out.lambda1 = p.lambda1;
    out.lambda2 = p.lambda2;
    return out;
}

cavsim::Pulse from_c(const cavsim_pulse& p) {
    if (p.port != 1 && p.port != 2) {
        cavsim::fail(cavsim::ErrorCode::InvalidArgument, "pulse port must be 1 or 2");
    }
    cavsim::Pulse out;
    out.center_frequency = p.center_frequency;
    out.bandwidth_sigma = p.bandwidth_sigma;
    out.arrival_time = p.arrival_time;
    out.port = p.port == 1 ? cavsim::Port::One : cavsim::Port::Two;
    return out;
}

cavsim::GateKind from_c(cavsim_gate_kind kind) {
    if (kind != CAVSIM_GATE_CPHASE && kind != CAVSIM_GATE_CCPHASE) {
        cavsim::fail(cavsim::ErrorCode::InvalidArgument, "unknown gate kind");
    }
    return kind == CAVSIM_GATE_CPHASE ? cavsim::GateKind::CPhase : cavsim::GateKind::CCPhase;
}

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out) std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void require(bool ok, const char* message) {
    if (!ok) cavsim::fail(cavsim::ErrorCode::InvalidArgument, message);
}

std::vector<cavsim::PhotonInput> photons_from_pairs(const cavsim_complex* amplitudes,
                                                    size_t n_amplitudes) {
    require(amplitudes != nullptr && n_amplitudes % 2 == 0 && n_amplitudes > 0,
            "expected a,b amplitude pairs");
    std::vector<cavsim::PhotonInput> photons(n_amplitudes / 2);
    for (size_t i = 0; i < photons.size(); ++i) {
        photons[i].a = {amplitudes[2 * i].re, amplitudes[2 * i].im};
        photons[i].b = {amplitudes[2 * i + 1].re, amplitudes[2 * i + 1].im};
    }
    return photons;
}

}  // namespace

struct cavsim_trajectory {
    cavsim::AmplitudeTrajectory value;
};

struct cavsim_gate_report {
    cavsim::GateReport value;
};

struct cavsim_table {
    cavsim::SweepTable value;
};

struct cavsim_network {
    cavsim::NetworkProgram value;
};

extern "C" {

const char* cavsim_version(void) { return "0.1.0"; }

const char* cavsim_status_name(cavsim_status status) {
    switch (status) {
        case CAVSIM_OK: return "OK";
        case CAVSIM_ERROR_INVALID_ARGUMENT: return "InvalidArgument";
        case CAVSIM_ERROR_DEGENERATE_DENOMINATOR: return "DegenerateDenominator";
        case CAVSIM_ERROR_STEP_TOO_LARGE: return "StepTooLarge";
        case CAVSIM_ERROR_WINDOW_TOO_SHORT: return "WindowTooShort";
        case CAVSIM_ERROR_TOO_BROADBAND: return "TooBroadband";
        case CAVSIM_ERROR_REGISTER_COLLISION: return "RegisterCollision";
        case CAVSIM_ERROR_REGISTER_MISMATCH: return "RegisterMismatch";
        case CAVSIM_ERROR_UNKNOWN_REGISTER: return "UnknownRegister";
        case CAVSIM_ERROR_UNSUPPORTED_ANGLE: return "UnsupportedAngle";
        case CAVSIM_ERROR_PATH_OCCUPIED: return "PathOccupied";
        case CAVSIM_ERROR_ZERO_NORM_STATE: return "ZeroNormState";
        case CAVSIM_ERROR_PARSE: return "ParseError";
        case CAVSIM_ERROR_VALIDATION: return "ValidationError";
        case CAVSIM_ERROR_INVALID_SPEC: return "InvalidSpec";
        case CAVSIM_ERROR_INVALID_SAMPLE_COUNT: return "InvalidSampleCount";
        case CAVSIM_ERROR_INTERNAL: return "InternalError";
    }
    return "UnknownStatus";
}

const char* cavsim_last_error_message(void) { return g_last_error.c_str(); }
int cavsim_last_error_line(void) { return g_last_line; }
int cavsim_last_error_column(void) { return g_last_column; }
void cavsim_string_free(char* text) { std::free(text); }

size_t cavsim_preset_count(void) { return cavsim::presets().size(); }

const char* cavsim_preset_name(size_t index) {
    const auto& list = cavsim::presets();
    return index < list.size() ? list[index].name.c_str() : nullptr;
}

cavsim_status cavsim_preset_get(const char* name, cavsim_system_params* out) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "name and out must be non-null");
        const cavsim::SystemParams* found = cavsim::find_preset(name);
        if (!found) {
            cavsim::fail(cavsim::ErrorCode::InvalidArgument,
                         std::string("unknown preset '") + name + "'");
        }
        out->omega1 = found->omega1;
        out->omega2 = found->omega2;
        out->omega_ge = found->omega_ge;
        out->kappa1 = found->kappa1;
        out->kappa2 = found->kappa2;
        out->gamma = found->gamma;
        out->lambda1 = found->lambda1;
        out->lambda2 = found->lambda2;
    });
}

cavsim_status cavsim_detunings(const cavsim_system_params* params, double omega, double* delta1,
                               double* delta2, double* delta_ge) {
    return guarded([&] {
        require(params && delta1 && delta2 && delta_ge, "null pointer argument");
        const cavsim::Detunings d = cavsim::detunings(from_c(*params), omega);
        *delta1 = d.delta1;
        *delta2 = d.delta2;
        *delta_ge = d.delta_ge;
    });
}

cavsim_status cavsim_scatter_coefficients(const cavsim_system_params* params, double omega,
                                          cavsim_complex* r, cavsim_complex* t) {
    return guarded([&] {
        require(params && r && t, "null pointer argument");
        const cavsim::ScatterCoeffs c = cavsim::scatter_coefficients(from_c(*params), omega);
        *r = {c.r.real(), c.r.imag()};
        *t = {c.t.real(), c.t.imag()};
    });
}

cavsim_status cavsim_empty_cavity_reflection(double kappa1, double delta1, cavsim_complex* r) {
    return guarded([&] {
        require(r != nullptr, "null pointer argument");
        const cavsim::Complex value = cavsim::empty_cavity_reflection(kappa1, delta1);
        *r = {value.real(), value.imag()};
    });
}

cavsim_status cavsim_resonant_coefficients(double kappa, double gamma, double lambda, double* r0,
                                           double* t0, double* p) {
    return guarded([&] {
        require(r0 && t0 && p, "null pointer argument");
        const cavsim::ResonantCoeffs c = cavsim::resonant_coefficients(kappa, gamma, lambda);
        *r0 = c.r0;
        *t0 = c.t0;
        *p = c.p;
    });
}

cavsim_status cavsim_default_time_step(const cavsim_system_params* params,
                                       const cavsim_pulse* pulse, double* dt) {
    return guarded([&] {
        require(params && pulse && dt, "null pointer argument");
        *dt = cavsim::default_time_step(from_c(*params), from_c(*pulse));
    });
}

cavsim_status cavsim_integrate_amplitudes(const cavsim_system_params* params,
                                          const cavsim_pulse* pulse, double t_start, double t_end,
                                          double dt, cavsim_trajectory** out) {
    return guarded([&] {
        require(params && pulse && out, "null pointer argument");
        auto traj = std::make_unique<cavsim_trajectory>();
        traj->value = cavsim::integrate_amplitudes(from_c(*params), from_c(*pulse), t_start,
                                                   t_end, dt);
        *out = traj.release();
    });
}

void cavsim_trajectory_destroy(cavsim_trajectory* traj) { delete traj; }

size_t cavsim_trajectory_size(const cavsim_trajectory* traj) {
    return traj ? traj->value.time.size() : 0;
}

cavsim_status cavsim_trajectory_csv(const cavsim_trajectory* traj, size_t stride, char** out) {
    return guarded([&] {
        require(traj && out, "null pointer argument");
        *out = dup_string(cavsim::trajectory_csv(traj->value, stride));
        require(*out != nullptr, "out of memory");
    });
}

cavsim_status cavsim_energy_balance(const cavsim_trajectory* traj,
                                    const cavsim_system_params* params, double* residual) {
    return guarded([&] {
        require(traj && params && residual, "null pointer argument");
        *residual = cavsim::energy_balance(traj->value, from_c(*params));
    });
}

cavsim_status cavsim_extract_scatter_coefficients(const cavsim_trajectory* traj,
                                                  const cavsim_pulse* pulse, cavsim_complex* r,
                                                  cavsim_complex* t) {
    return guarded([&] {
        require(traj && pulse && r && t, "null pointer argument");
        const cavsim::ScatterCoeffs c =
            cavsim::extract_scatter_coefficients(traj->value, from_c(*pulse));
        *r = {c.r.real(), c.r.imag()};
        *t = {c.t.real(), c.t.imag()};
    });
}

cavsim_status cavsim_gate_run(cavsim_gate_kind kind, const cavsim_complex* amplitudes,
                              size_t n_amplitudes, double p, cavsim_gate_report** out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        const cavsim::GateKind gate = from_c(kind);
        const auto photons = photons_from_pairs(amplitudes, n_amplitudes);
        const size_t expected = gate == cavsim::GateKind::CPhase ? 2 : 3;
        require(photons.size() == expected, "wrong number of amplitude pairs for this gate");
        auto report = std::make_unique<cavsim_gate_report>();
        report->value = cavsim::make_report(
            gate,
            gate == cavsim::GateKind::CPhase ? cavsim::cphase_program()
                                             : cavsim::ccphase_program(),
            photons, p);
        *out = report.release();
    });
}

cavsim_status cavsim_gate_run_state_json(cavsim_gate_kind kind, const char* photons_json,
                                         double p, cavsim_gate_report** out) {
    return guarded([&] {
        require(photons_json && out, "null pointer argument");
        const cavsim::GateKind gate = from_c(kind);
        const auto photons = cavsim::photon_inputs_from_json(photons_json);
        const size_t expected = gate == cavsim::GateKind::CPhase ? 2 : 3;
        if (photons.size() != expected) {
            cavsim::fail(cavsim::ErrorCode::InvalidSpec,
                         "wrong number of photon states for this gate");
        }
        auto report = std::make_unique<cavsim_gate_report>();
        report->value = cavsim::make_report(
            gate,
            gate == cavsim::GateKind::CPhase ? cavsim::cphase_program()
                                             : cavsim::ccphase_program(),
            photons, p);
        *out = report.release();
    });
}

void cavsim_gate_report_destroy(cavsim_gate_report* report) { delete report; }

cavsim_status cavsim_gate_report_fidelity(const cavsim_gate_report* report, double* fidelity) {
    return guarded([&] {
        require(report && fidelity, "null pointer argument");
        *fidelity = report->value.fidelity;
    });
}

cavsim_status cavsim_gate_report_efficiency(const cavsim_gate_report* report,
                                            double* efficiency) {
    return guarded([&] {
        require(report && efficiency, "null pointer argument");
        *efficiency = report->value.efficiency;
    });
}

cavsim_status cavsim_gate_report_json(const cavsim_gate_report* report, char** out) {
    return guarded([&] {
        require(report && out, "null pointer argument");
        *out = dup_string(cavsim::gate_report_json(report->value));
        require(*out != nullptr, "out of memory");
    });
}

cavsim_status cavsim_truth_table(cavsim_gate_kind kind, double p, cavsim_complex* entries,
                                 size_t capacity, size_t* dim) {
    return guarded([&] {
        require(entries && dim, "null pointer argument");
        const auto matrix = cavsim::truth_table(from_c(kind), p);
        const size_t n = matrix.size();
        require(capacity >= n * n, "entries buffer too small");
        for (size_t row = 0; row < n; ++row) {
            for (size_t col = 0; col < n; ++col) {
                entries[row * n + col] = {matrix[row][col].real(), matrix[row][col].imag()};
            }
        }
        *dim = n;
    });
}

cavsim_status cavsim_closed_form_averages(cavsim_gate_kind kind, double p, double* fidelity,
                                          double* efficiency) {
    return guarded([&] {
        require(fidelity && efficiency, "null pointer argument");
        const cavsim::AverageMetrics m = cavsim::closed_form(from_c(kind), p);
        *fidelity = m.fidelity;
        *efficiency = m.efficiency;
    });
}

cavsim_status cavsim_quadrature_averages(cavsim_gate_kind kind, double p, int n_per_angle,
                                         double* fidelity, double* efficiency) {
    return guarded([&] {
        require(fidelity && efficiency, "null pointer argument");
        const cavsim::MetricsPoint m =
            cavsim::average_by_quadrature(from_c(kind), p, n_per_angle);
        *fidelity = m.fidelity_avg;
        *efficiency = m.efficiency_avg;
    });
}

cavsim_status cavsim_sweep_resonant(double ratio_min, double ratio_max, size_t points,
                                    cavsim_table** out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        auto table = std::make_unique<cavsim_table>();
        table->value = cavsim::sweep_resonant_linspace(ratio_min, ratio_max, points);
        *out = table.release();
    });
}

cavsim_status cavsim_sweep_fidelity(double lk_min, double lk_max, size_t lk_points, double lg_min,
                                    double lg_max, size_t lg_points,
                                    cavsim_gate_selection gates, cavsim_table** out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        cavsim::GateSelection selection;
        switch (gates) {
            case CAVSIM_SELECT_CPHASE: selection = cavsim::GateSelection::CPhaseOnly; break;
            case CAVSIM_SELECT_CCPHASE: selection = cavsim::GateSelection::CCPhaseOnly; break;
            case CAVSIM_SELECT_BOTH: selection = cavsim::GateSelection::Both; break;
            default:
                cavsim::fail(cavsim::ErrorCode::InvalidArgument, "unknown gate selection");
        }
        cavsim::FidelitySweepGrid grid{lk_min, lk_max, lk_points, lg_min, lg_max, lg_points};
        auto table = std::make_unique<cavsim_table>();
        table->value = cavsim::sweep_fidelity(grid, selection);
        *out = table.release();
    });
}

void cavsim_table_destroy(cavsim_table* table) { delete table; }

size_t cavsim_table_rows(const cavsim_table* table) {
    return table ? table->value.rows.size() : 0;
}

size_t cavsim_table_columns(const cavsim_table* table) {
    return table ? table->value.columns.size() : 0;
}

const char* cavsim_table_column_name(const cavsim_table* table, size_t column) {
    if (!table || column >= table->value.columns.size()) return nullptr;
    return table->value.columns[column].c_str();
}

cavsim_status cavsim_table_value(const cavsim_table* table, size_t row, size_t column,
                                 double* value) {
    return guarded([&] {
        require(table && value, "null pointer argument");
        require(row < table->value.rows.size() && column < table->value.columns.size(),
                "table index out of range");
        *value = table->value.rows[row][column];
    });
}

cavsim_status cavsim_table_csv(const cavsim_table* table, char** out) {
    return guarded([&] {
        require(table && out, "null pointer argument");
        *out = dup_string(cavsim::table_csv(table->value));
        require(*out != nullptr, "out of memory");
    });
}

cavsim_status cavsim_table_json(const cavsim_table* table, char** out) {
    return guarded([&] {
        require(table && out, "null pointer argument");
        *out = dup_string(cavsim::table_json(table->value));
        require(*out != nullptr, "out of memory");
    });
}

cavsim_status cavsim_network_parse(const char* text, cavsim_network** out) {
    return guarded([&] {
        require(text && out, "null pointer argument");
        auto network = std::make_unique<cavsim_network>();
        network->value = cavsim::parse_network(text);
        *out = network.release();
    });
}

void cavsim_network_destroy(cavsim_network* network) { delete network; }

cavsim_status cavsim_network_photon_count(const cavsim_network* network, size_t* count) {
    return guarded([&] {
        require(network && count, "null pointer argument");
        *count = static_cast<size_t>(network->value.n_photons);
    });
}

cavsim_status cavsim_network_run_json(const cavsim_network* network,
                                      const cavsim_complex* photon_amps, size_t n_amplitudes,
                                      double p, char** out) {
    return guarded([&] {
        require(network && out, "null pointer argument");
        const auto photons = photons_from_pairs(photon_amps, n_amplitudes);
        const cavsim::NetworkRun run = cavsim::run_program(network->value, photons, p);
        *out = dup_string(cavsim::state_to_json_string(run.joint));
        require(*out != nullptr, "out of memory");
    });
}

}  // extern "C"

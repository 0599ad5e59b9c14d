// Command-line front end for the cavsim shared library. Talks to the core
// exclusively through the C API in cavsim/cavsim.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cavsim/cavsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string core_error(cavsim_status status) {
    std::string message = cavsim_last_error_message();
    if (message.empty()) message = cavsim_status_name(status);
    return message;
}

void check_usage(cavsim_status status) {
    if (status != CAVSIM_OK) throw UsageError(core_error(status));
}

struct StringGuard {
    char* text = nullptr;
    ~StringGuard() { cavsim_string_free(text); }
};

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + out_path + "'");
    file << content;
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

// "re" or "re,im"
cavsim_complex parse_complex(const std::string& text) {
    std::istringstream stream(text);
    cavsim_complex value{0.0, 0.0};
    char comma = 0;
    if (!(stream >> value.re)) throw UsageError("cannot parse complex value '" + text + "'");
    if (stream >> comma) {
        if (comma != ',' || !(stream >> value.im)) {
            throw UsageError("cannot parse complex value '" + text + "' (expected re[,im])");
        }
    }
    std::string rest;
    if (stream >> rest) throw UsageError("trailing input in complex value '" + text + "'");
    return value;
}

// ---- physical parameter flags -----------------------------------------------

struct ParamOptions {
    std::string preset;
    std::optional<double> omega, omega1, omega2, omega_ge;
    std::optional<double> kappa, kappa1, kappa2, gamma;
    std::optional<double> lambda, lambda1, lambda2;
    std::optional<double> kappa_inv_us, gamma_inv_us, lambda_mhz;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "parameter preset (empty, weak2, weak3, weak4, strong)");
        cmd->add_option("--omega", omega, "common resonance frequency [rad/s]");
        cmd->add_option("--omega1", omega1, "cavity-1 frequency [rad/s]");
        cmd->add_option("--omega2", omega2, "cavity-2 frequency [rad/s]");
        cmd->add_option("--omega-ge", omega_ge, "emitter transition frequency [rad/s]");
        cmd->add_option("--kappa", kappa, "both mirror decay rates [rad/s]");
        cmd->add_option("--kappa1", kappa1, "cavity-1 mirror decay rate [rad/s]");
        cmd->add_option("--kappa2", kappa2, "cavity-2 mirror decay rate [rad/s]");
        cmd->add_option("--gamma", gamma, "emitter decay rate [rad/s]");
        cmd->add_option("--lambda", lambda, "both coupling strengths [rad/s]");
        cmd->add_option("--lambda1", lambda1, "emitter/cavity-1 coupling [rad/s]");
        cmd->add_option("--lambda2", lambda2, "emitter/cavity-2 coupling [rad/s]");
        cmd->add_option("--kappa-inv-us", kappa_inv_us, "cavity lifetime 1/kappa [us]");
        cmd->add_option("--gamma-inv-us", gamma_inv_us, "emitter lifetime 1/gamma [us]");
        cmd->add_option("--lambda-mhz", lambda_mhz, "coupling lambda/(2 pi) [MHz]");
    }

    cavsim_system_params resolve() const {
        cavsim_system_params p{};
        if (!preset.empty()) check_usage(cavsim_preset_get(preset.c_str(), &p));
        if (omega) p.omega1 = p.omega2 = p.omega_ge = *omega;
        if (omega1) p.omega1 = *omega1;
        if (omega2) p.omega2 = *omega2;
        if (omega_ge) p.omega_ge = *omega_ge;
        if (kappa) p.kappa1 = p.kappa2 = *kappa;
        if (kappa_inv_us) {
            if (*kappa_inv_us <= 0) throw UsageError("--kappa-inv-us must be positive");
            p.kappa1 = p.kappa2 = 1e6 / *kappa_inv_us;
        }
        if (kappa1) p.kappa1 = *kappa1;
        if (kappa2) p.kappa2 = *kappa2;
        if (gamma) p.gamma = *gamma;
        if (gamma_inv_us) {
            if (*gamma_inv_us <= 0) throw UsageError("--gamma-inv-us must be positive");
            p.gamma = 1e6 / *gamma_inv_us;
        }
        if (lambda) p.lambda1 = p.lambda2 = *lambda;
        if (lambda_mhz) p.lambda1 = p.lambda2 = 2.0 * std::numbers::pi * (*lambda_mhz) * 1e6;
        if (lambda1) p.lambda1 = *lambda1;
        if (lambda2) p.lambda2 = *lambda2;
        return p;
    }

    // kappa/lambda symmetry required for the resonant formulas
    void require_symmetric(const cavsim_system_params& p) const {
        if (p.kappa1 != p.kappa2 || p.lambda1 != p.lambda2) {
            throw UsageError("resonant coefficients need kappa1 == kappa2 and lambda1 == lambda2");
        }
    }
};

double resonant_p_from(const cavsim_system_params& params) {
    double r0 = 0, t0 = 0, p = 0;
    check_usage(cavsim_resonant_coefficients(params.kappa1, params.gamma, params.lambda1,
                                             &r0, &t0, &p));
    return p;
}

// ---- coeffs -----------------------------------------------------------------

struct CoeffsOptions {
    ParamOptions params;
    bool resonant = false;
    std::optional<double> delta_min, delta_max;
    std::size_t points = 201;
    std::string format = "csv";
    std::string out;
};

int run_coeffs(const CoeffsOptions& opt) {
    const cavsim_system_params p = opt.params.resolve();
    std::string content;

    if (opt.resonant) {
        opt.params.require_symmetric(p);
        double r0 = 0, t0 = 0, pr = 0;
        check_usage(cavsim_resonant_coefficients(p.kappa1, p.gamma, p.lambda1, &r0, &t0, &pr));
        if (opt.format == "json") {
            nlohmann::ordered_json doc{{"r0", r0}, {"t0", t0}, {"p", pr}};
            content = doc.dump(2) + "\n";
        } else {
            content = "r0,t0,p\n" + fmt12(r0) + "," + fmt12(t0) + "," + fmt12(pr) + "\n";
        }
        write_output(content, opt.out);
        return kExitOk;
    }

    if (opt.points < 2) throw UsageError("--points must be at least 2");
    const double scale =
        std::max({p.kappa1, p.kappa2, p.gamma, p.lambda1, p.lambda2, 1.0});
    const double lo = opt.delta_min.value_or(-5.0 * scale);
    const double hi = opt.delta_max.value_or(5.0 * scale);
    if (hi <= lo) throw UsageError("--delta-max must exceed --delta-min");

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (opt.format == "csv") content = "omega,re_r,im_r,re_t,im_t\n";
    for (std::size_t i = 0; i < opt.points; ++i) {
        const double delta =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opt.points - 1);
        const double omega = p.omega1 + delta;
        cavsim_complex r{0, 0}, t{0, 0};
        check_usage(cavsim_scatter_coefficients(&p, omega, &r, &t));
        if (opt.format == "json") {
            rows.push_back({{"omega", omega},
                            {"r", {{"re", r.re}, {"im", r.im}}},
                            {"t", {{"re", t.re}, {"im", t.im}}}});
        } else {
            content += fmt12(omega) + "," + fmt12(r.re) + "," + fmt12(r.im) + "," +
                       fmt12(t.re) + "," + fmt12(t.im) + "\n";
        }
    }
    if (opt.format == "json") content = rows.dump(2) + "\n";
    write_output(content, opt.out);
    return kExitOk;
}

// ---- oracle-verify ----------------------------------------------------------

struct OracleOptions {
    ParamOptions params;
    double delta = 0.0;       // pulse center detuning from omega1 [rad/s]
    int port = 1;
    double sigma_frac = 0.01; // bandwidth_sigma = sigma_frac * min(kappa1, kappa2)
    double window = 20.0;     // total window in units of 1/bandwidth_sigma
    double dt_scale = 1.0;    // multiplies the default time step
    double tol_rt = 1e-3;
    double tol_energy = 1e-6;
    std::string dump_trajectory;
    std::size_t dump_stride = 0;  // 0 = auto
    std::string format = "text";
    std::string out;
};

int run_oracle_verify(const OracleOptions& opt) {
    const cavsim_system_params p = opt.params.resolve();
    if (opt.sigma_frac <= 0) throw UsageError("--sigma-frac must be positive");
    if (opt.window <= 10.0) throw UsageError("--window must exceed 10 pulse widths");
    if (opt.dt_scale <= 0) throw UsageError("--dt-scale must be positive");
    if (opt.port != 1 && opt.port != 2) throw UsageError("--port must be 1 or 2");

    cavsim_pulse pulse{};
    pulse.center_frequency = p.omega1 + opt.delta;
    pulse.bandwidth_sigma = opt.sigma_frac * std::min(p.kappa1, p.kappa2);
    pulse.arrival_time = 0.0;
    pulse.port = opt.port;
    if (pulse.bandwidth_sigma <= 0) {
        throw UsageError("pulse bandwidth is zero; kappa1 and kappa2 must be positive");
    }

    // frequency-domain reference, as seen from the injected port
    cavsim_system_params seen = p;
    if (opt.port == 2) {
        std::swap(seen.omega1, seen.omega2);
        std::swap(seen.kappa1, seen.kappa2);
        std::swap(seen.lambda1, seen.lambda2);
    }
    cavsim_complex r_fd{0, 0}, t_fd{0, 0};
    check_usage(cavsim_scatter_coefficients(&seen, pulse.center_frequency, &r_fd, &t_fd));

    double dt = 0.0;
    check_usage(cavsim_default_time_step(&p, &pulse, &dt));
    dt *= opt.dt_scale;
    const double half = 0.5 * opt.window / pulse.bandwidth_sigma;

    cavsim_trajectory* traj = nullptr;
    cavsim_status status = cavsim_integrate_amplitudes(&p, &pulse, -half, half, dt, &traj);
    if (status != CAVSIM_OK) {
        std::cerr << cavsim_status_name(status) << ": " << core_error(status) << "\n";
        return kExitVerification;
    }
    std::unique_ptr<cavsim_trajectory, decltype(&cavsim_trajectory_destroy)> traj_guard(
        traj, &cavsim_trajectory_destroy);

    cavsim_complex r_td{0, 0}, t_td{0, 0};
    status = cavsim_extract_scatter_coefficients(traj, &pulse, &r_td, &t_td);
    if (status != CAVSIM_OK) {
        std::cerr << cavsim_status_name(status) << ": " << core_error(status) << "\n";
        return kExitVerification;
    }
    double residual = 0.0;
    check_usage(cavsim_energy_balance(traj, &p, &residual));

    const double dr = std::hypot(r_td.re - r_fd.re, r_td.im - r_fd.im);
    const double dt_coeff = std::hypot(t_td.re - t_fd.re, t_td.im - t_fd.im);
    const bool pass = dr < opt.tol_rt && dt_coeff < opt.tol_rt && residual < opt.tol_energy;

    if (!opt.dump_trajectory.empty()) {
        std::size_t stride = opt.dump_stride;
        if (stride == 0) stride = std::max<std::size_t>(1, cavsim_trajectory_size(traj) / 10000);
        StringGuard csv;
        check_usage(cavsim_trajectory_csv(traj, stride, &csv.text));
        write_output(csv.text, opt.dump_trajectory);
    }

    std::string content;
    if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["omega"] = pulse.center_frequency;
        doc["bandwidth_sigma"] = pulse.bandwidth_sigma;
        doc["dt"] = dt;
        doc["frequency_domain"] = {{"r", {{"re", r_fd.re}, {"im", r_fd.im}}},
                                   {"t", {{"re", t_fd.re}, {"im", t_fd.im}}}};
        doc["time_domain"] = {{"r", {{"re", r_td.re}, {"im", r_td.im}}},
                              {"t", {{"re", t_td.re}, {"im", t_td.im}}}};
        doc["abs_dr"] = dr;
        doc["abs_dt"] = dt_coeff;
        doc["energy_residual"] = residual;
        doc["pass"] = pass;
        content = doc.dump(2) + "\n";
    } else if (opt.format == "csv") {
        content = "re_r_fd,im_r_fd,re_t_fd,im_t_fd,re_r_td,im_r_td,re_t_td,im_t_td,"
                  "abs_dr,abs_dt,energy_residual,pass\n";
        content += fmt12(r_fd.re) + "," + fmt12(r_fd.im) + "," + fmt12(t_fd.re) + "," +
                   fmt12(t_fd.im) + "," + fmt12(r_td.re) + "," + fmt12(r_td.im) + "," +
                   fmt12(t_td.re) + "," + fmt12(t_td.im) + "," + fmt12(dr) + "," +
                   fmt12(dt_coeff) + "," + fmt12(residual) + "," + (pass ? "1" : "0") + "\n";
    } else {
        std::ostringstream text;
        text << "frequency-domain: r = (" << fmt12(r_fd.re) << ", " << fmt12(r_fd.im)
             << ")  t = (" << fmt12(t_fd.re) << ", " << fmt12(t_fd.im) << ")\n"
             << "time-domain:      r = (" << fmt12(r_td.re) << ", " << fmt12(r_td.im)
             << ")  t = (" << fmt12(t_td.re) << ", " << fmt12(t_td.im) << ")\n"
             << "|dr| = " << fmt12(dr) << "  |dt| = " << fmt12(dt_coeff)
             << "  energy residual = " << fmt12(residual) << "\n"
             << (pass ? "PASS" : "FAIL") << " (tolerances: rt " << fmt12(opt.tol_rt)
             << ", energy " << fmt12(opt.tol_energy) << ")\n";
        content = text.str();
    }
    write_output(content, opt.out);
    return pass ? kExitOk : kExitVerification;
}

// ---- gate -------------------------------------------------------------------

struct GateOptions {
    ParamOptions params;
    std::string gate;
    std::optional<double> p;
    std::vector<std::pair<std::string, std::string>> amplitude_flags;
    std::optional<double> theta1, theta2, theta3;
    std::string a1, b1, a2, b2, a3, b3;
    std::string input_state;
    bool truth_table = false;
    std::string format = "json";
    std::string out;
};

int run_gate(const GateOptions& opt) {
    const cavsim_gate_kind kind =
        opt.gate == "cphase" ? CAVSIM_GATE_CPHASE : CAVSIM_GATE_CCPHASE;
    const std::size_t n_photons = kind == CAVSIM_GATE_CPHASE ? 2 : 3;

    double p_value;
    if (opt.p) {
        p_value = *opt.p;
    } else {
        const cavsim_system_params params = opt.params.resolve();
        if (params.kappa1 == 0 && params.gamma == 0 && params.lambda1 == 0) {
            throw UsageError("give --p or physical parameters (--kappa/--gamma/--lambda or --preset)");
        }
        opt.params.require_symmetric(params);
        p_value = resonant_p_from(params);
    }

    if (opt.truth_table) {
        std::vector<cavsim_complex> entries(64);
        std::size_t dim = 0;
        check_usage(cavsim_truth_table(kind, p_value, entries.data(), entries.size(), &dim));
        const std::vector<std::string> basis =
            kind == CAVSIM_GATE_CPHASE
                ? std::vector<std::string>{"RR", "RL", "LR", "LL"}
                : std::vector<std::string>{"RRR", "RRL", "RLR", "RLL",
                                           "LRR", "LRL", "LLR", "LLL"};
        std::string content;
        if (opt.format == "csv") {
            content = "basis";
            for (std::size_t col = 0; col < dim; ++col) {
                content += "," + basis[col] + "_re," + basis[col] + "_im";
            }
            content += "\n";
            for (std::size_t row = 0; row < dim; ++row) {
                content += basis[row];
                for (std::size_t col = 0; col < dim; ++col) {
                    const cavsim_complex v = entries[row * dim + col];
                    content += "," + fmt12(v.re) + "," + fmt12(v.im);
                }
                content += "\n";
            }
        } else {
            nlohmann::ordered_json doc;
            doc["gate"] = opt.gate;
            doc["p"] = p_value;
            doc["basis"] = basis;
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (std::size_t row = 0; row < dim; ++row) {
                nlohmann::ordered_json r = nlohmann::ordered_json::array();
                for (std::size_t col = 0; col < dim; ++col) {
                    const cavsim_complex v = entries[row * dim + col];
                    r.push_back({{"re", v.re}, {"im", v.im}});
                }
                rows.push_back(r);
            }
            doc["rows"] = rows;
            content = doc.dump(2) + "\n";
        }
        write_output(content, opt.out);
        return kExitOk;
    }

    cavsim_gate_report* report = nullptr;
    const bool have_thetas = opt.theta1 || opt.theta2 || opt.theta3;
    const bool have_amps = !opt.a1.empty() || !opt.b1.empty() || !opt.a2.empty() ||
                           !opt.b2.empty() || !opt.a3.empty() || !opt.b3.empty();
    if (!opt.input_state.empty()) {
        if (have_thetas || have_amps) {
            throw UsageError("--input-state excludes --theta*/--a*/--b* flags");
        }
        const std::string text = read_file(opt.input_state);
        check_usage(cavsim_gate_run_state_json(kind, text.c_str(), p_value, &report));
    } else if (have_thetas) {
        if (have_amps) throw UsageError("give either angles or amplitudes, not both");
        if (!opt.theta1 || !opt.theta2 || (n_photons == 3 && !opt.theta3)) {
            throw UsageError("need --theta1 and --theta2 (and --theta3 for ccphase)");
        }
        std::vector<cavsim_complex> amps;
        for (double theta : n_photons == 3
                 ? std::vector<double>{*opt.theta1, *opt.theta2, *opt.theta3}
                 : std::vector<double>{*opt.theta1, *opt.theta2}) {
            amps.push_back({std::cos(theta), 0.0});
            amps.push_back({std::sin(theta), 0.0});
        }
        check_usage(cavsim_gate_run(kind, amps.data(), amps.size(), p_value, &report));
    } else if (have_amps) {
        std::vector<std::string> texts = {opt.a1, opt.b1, opt.a2, opt.b2};
        if (n_photons == 3) {
            texts.push_back(opt.a3);
            texts.push_back(opt.b3);
        }
        std::vector<cavsim_complex> amps;
        for (const std::string& text : texts) {
            if (text.empty()) {
                throw UsageError("all of --a1/--b1/--a2/--b2" +
                                 std::string(n_photons == 3 ? "/--a3/--b3" : "") +
                                 " are required");
            }
            amps.push_back(parse_complex(text));
        }
        check_usage(cavsim_gate_run(kind, amps.data(), amps.size(), p_value, &report));
    } else {
        throw UsageError("give photon inputs via --theta*, --a*/--b*, or --input-state");
    }
    std::unique_ptr<cavsim_gate_report, decltype(&cavsim_gate_report_destroy)> guard(
        report, &cavsim_gate_report_destroy);

    std::string content;
    if (opt.format == "csv") {
        double fidelity = 0, efficiency = 0;
        check_usage(cavsim_gate_report_fidelity(report, &fidelity));
        check_usage(cavsim_gate_report_efficiency(report, &efficiency));
        content = "quantity,value\nfidelity," + fmt12(fidelity) + "\nefficiency," +
                  fmt12(efficiency) + "\n";
    } else {
        StringGuard json;
        check_usage(cavsim_gate_report_json(report, &json.text));
        content = json.text;
    }
    write_output(content, opt.out);
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepOptions {
    int fig = 0;
    double min = 0.0, max = 5.0;
    std::optional<std::size_t> points;
    double lk_min = 0.1, lk_max = 5.0, lg_min = 0.1, lg_max = 5.0;
    std::string gate = "both";
    std::string format = "csv";
    std::string out;
};

int run_sweep(const SweepOptions& opt) {
    if (opt.points && *opt.points == 0) throw UsageError("--points must be positive");
    cavsim_table* table = nullptr;
    if (opt.fig == 5) {
        const std::size_t points = opt.points.value_or(200);
        check_usage(cavsim_sweep_resonant(opt.min, opt.max, points, &table));
    } else if (opt.fig == 6) {
        // 99 points per axis puts the grid on a 0.05 pitch so the quoted
        // (2,2), (3,3) and (4,4) working points land exactly on rows.
        const std::size_t points = opt.points.value_or(99);
        cavsim_gate_selection gates = CAVSIM_SELECT_BOTH;
        if (opt.gate == "cphase") gates = CAVSIM_SELECT_CPHASE;
        else if (opt.gate == "ccphase") gates = CAVSIM_SELECT_CCPHASE;
        else if (opt.gate != "both") throw UsageError("--gate must be cphase, ccphase or both");
        check_usage(cavsim_sweep_fidelity(opt.lk_min, opt.lk_max, points, opt.lg_min,
                                          opt.lg_max, points, gates, &table));
    } else {
        throw UsageError("--fig must be 5 or 6");
    }
    std::unique_ptr<cavsim_table, decltype(&cavsim_table_destroy)> guard(table,
                                                                         &cavsim_table_destroy);
    StringGuard rendered;
    if (opt.format == "json") {
        check_usage(cavsim_table_json(table, &rendered.text));
    } else {
        check_usage(cavsim_table_csv(table, &rendered.text));
    }
    write_output(rendered.text, opt.out);
    return kExitOk;
}

void add_common_output(CLI::App* cmd, std::string* format, std::string* out,
                       const std::string& default_format) {
    *format = default_format;
    cmd->add_option("--format", *format, "output format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    cmd->add_option("--out", *out, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double single-sided cavity simulator"};
    app.require_subcommand(1);

    CoeffsOptions coeffs;
    CLI::App* coeffs_cmd =
        app.add_subcommand("coeffs", "frequency-domain reflection/transmission coefficients");
    coeffs.params.attach(coeffs_cmd);
    coeffs_cmd->add_flag("--resonant", coeffs.resonant,
                         "emit the resonant r0, t0, p instead of a frequency scan");
    coeffs_cmd->add_option("--delta-min", coeffs.delta_min, "scan start, omega - omega1 [rad/s]");
    coeffs_cmd->add_option("--delta-max", coeffs.delta_max, "scan end, omega - omega1 [rad/s]");
    coeffs_cmd->add_option("--points", coeffs.points, "number of scan points");
    add_common_output(coeffs_cmd, &coeffs.format, &coeffs.out, "csv");

    OracleOptions oracle;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-verify", "cross-check Eq.-level coefficients against time-domain integration");
    oracle.params.attach(oracle_cmd);
    oracle_cmd->add_option("--delta", oracle.delta, "pulse detuning from omega1 [rad/s]");
    oracle_cmd->add_option("--port", oracle.port, "injection port (1 or 2)");
    oracle_cmd->add_option("--sigma-frac", oracle.sigma_frac,
                           "pulse bandwidth as a fraction of min(kappa1, kappa2)");
    oracle_cmd->add_option("--window", oracle.window, "window length in pulse widths (1/sigma)");
    oracle_cmd->add_option("--dt-scale", oracle.dt_scale, "scale on the default time step");
    oracle_cmd->add_option("--tol-rt", oracle.tol_rt, "tolerance on |r|, |t| differences");
    oracle_cmd->add_option("--tol-energy", oracle.tol_energy, "tolerance on the energy residual");
    oracle_cmd->add_option("--dump-trajectory", oracle.dump_trajectory,
                           "write the integrated trajectory as CSV to this file");
    oracle_cmd->add_option("--dump-stride", oracle.dump_stride,
                           "row stride for --dump-trajectory (0 = auto)");
    add_common_output(oracle_cmd, &oracle.format, &oracle.out, "text");

    GateOptions gate;
    CLI::App* gate_cmd = app.add_subcommand("gate", "run a photonic gate protocol");
    gate_cmd->add_option("kind", gate.gate, "cphase or ccphase")
        ->required()
        ->check(CLI::IsMember({"cphase", "ccphase"}));
    gate.params.attach(gate_cmd);
    gate_cmd->add_option("--p", gate.p, "combined transmission amplitude p = t0 + r0");
    gate_cmd->add_option("--theta1", gate.theta1, "a1 = cos(theta1), b1 = sin(theta1)");
    gate_cmd->add_option("--theta2", gate.theta2, "a2 = cos(theta2), b2 = sin(theta2)");
    gate_cmd->add_option("--theta3", gate.theta3, "a3 = cos(theta3), b3 = sin(theta3)");
    gate_cmd->add_option("--a1", gate.a1, "photon-1 R amplitude, re[,im]");
    gate_cmd->add_option("--b1", gate.b1, "photon-1 L amplitude, re[,im]");
    gate_cmd->add_option("--a2", gate.a2, "photon-2 R amplitude, re[,im]");
    gate_cmd->add_option("--b2", gate.b2, "photon-2 L amplitude, re[,im]");
    gate_cmd->add_option("--a3", gate.a3, "photon-3 R amplitude, re[,im]");
    gate_cmd->add_option("--b3", gate.b3, "photon-3 L amplitude, re[,im]");
    gate_cmd->add_option("--input-state", gate.input_state,
                         "JSON file with the photon input states");
    gate_cmd->add_flag("--truth-table", gate.truth_table, "emit only the gate matrix");
    add_common_output(gate_cmd, &gate.format, &gate.out, "json");

    SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps for the figure data");
    sweep_cmd->add_option("--fig", sweep.fig, "5 (resonant coefficients) or 6 (gate averages)")
        ->required();
    sweep_cmd->add_option("--min", sweep.min, "fig 5: smallest lambda/sqrt(kappa gamma)");
    sweep_cmd->add_option("--max", sweep.max, "fig 5: largest lambda/sqrt(kappa gamma)");
    sweep_cmd->add_option("--points", sweep.points,
                          "grid points (fig 5: total, fig 6: per axis)");
    sweep_cmd->add_option("--lk-min", sweep.lk_min, "fig 6: smallest lambda/kappa");
    sweep_cmd->add_option("--lk-max", sweep.lk_max, "fig 6: largest lambda/kappa");
    sweep_cmd->add_option("--lg-min", sweep.lg_min, "fig 6: smallest lambda/gamma");
    sweep_cmd->add_option("--lg-max", sweep.lg_max, "fig 6: largest lambda/gamma");
    sweep_cmd->add_option("--gate", sweep.gate, "fig 6 columns: cphase, ccphase or both");
    add_common_output(sweep_cmd, &sweep.format, &sweep.out, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (coeffs_cmd->parsed()) return run_coeffs(coeffs);
        if (oracle_cmd->parsed()) return run_oracle_verify(oracle);
        if (gate_cmd->parsed()) return run_gate(gate);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

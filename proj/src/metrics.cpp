#include "cavsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"

#include "cavsim/parallel.hpp"

namespace cavsim {

namespace {

double polyval(std::initializer_list<double> coeffs, double p) {
    // highest power first
    double acc = 0.0;
    for (double c : coeffs) acc = acc * p + c;
    return acc;
}

std::string format_row(const std::vector<double>& row) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
        if (i) out += ',';
        out += buf;
    }
    out += '\n';
    return out;
}

}  // namespace

double fidelity_joint(const StateVector& ideal, const StateVector& realistic) {
    return std::norm(inner_product(ideal, realistic));
}

double efficiency_joint(const StateVector& realistic) { return realistic.norm2(); }

AverageMetrics closed_form_cphase(double p) {
    return {polyval({19.0, 26.0, 19.0}, p) / 64.0,
            polyval({1.0, -2.0, 8.0, 2.0, 7.0}, p) / 16.0};
}

AverageMetrics closed_form_ccphase(double p) {
    return {polyval({89.0, 244.0, 638.0, 708.0, 369.0}, p) / 2048.0,
            polyval({1.0, -8.0, 40.0, -80.0, 154.0, -8.0, 144.0, 96.0, 173.0}, p) / 512.0};
}

AverageMetrics closed_form(GateKind kind, double p) {
    return kind == GateKind::CPhase ? closed_form_cphase(p) : closed_form_ccphase(p);
}

MetricsPoint average_by_quadrature(GateKind kind, double p, int n_per_angle) {
    if (n_per_angle < 16) {
        fail(ErrorCode::InvalidSampleCount, "need at least 16 nodes per angle");
    }
    const int n_angles = kind == GateKind::CPhase ? 2 : 3;
    const NetworkProgram program =
        kind == GateKind::CPhase ? cphase_program() : ccphase_program();

    std::size_t total = 1;
    for (int k = 0; k < n_angles; ++k) total *= static_cast<std::size_t>(n_per_angle);

    double fid_sum = 0.0;
    double eff_sum = 0.0;
    for (std::size_t index = 0; index < total; ++index) {
        std::vector<PhotonInput> photons(n_angles);
        std::size_t rest = index;
        for (int k = 0; k < n_angles; ++k) {
            const int node = static_cast<int>(rest % n_per_angle);
            rest /= n_per_angle;
            const double theta = 2.0 * std::numbers::pi * node / n_per_angle;
            photons[k] = {std::cos(theta), std::sin(theta)};
        }
        const StateVector realistic = run_program(program, photons, p).joint;
        const StateVector ideal = run_program(program, photons, 1.0).joint;
        fid_sum += fidelity_joint(ideal, realistic);
        eff_sum += efficiency_joint(realistic);
    }
    const double weight = 1.0 / static_cast<double>(total);
    return {p, fid_sum * weight, eff_sum * weight, MetricsSource::Quadrature};
}

SweepTable sweep_resonant(const std::vector<double>& lambda_ratio_grid) {
    SweepTable table;
    table.columns = {"lambda_over_sqrt_kappa_gamma", "r0", "t0", "p"};
    for (double ratio : lambda_ratio_grid) {
        if (!(ratio >= 0.0)) {
            fail(ErrorCode::InvalidArgument, "lambda ratios must be non-negative");
        }
        // scale-free: kappa = gamma = 1, lambda = ratio
        const ResonantCoeffs c = resonant_coefficients(1.0, 1.0, ratio);
        table.rows.push_back({ratio, c.r0, c.t0, c.p});
    }
    return table;
}

SweepTable sweep_resonant_linspace(double min, double max, std::size_t points) {
    if (points == 0 || !(min >= 0.0) || !(max >= min)) {
        fail(ErrorCode::InvalidArgument, "need points > 0 and 0 <= min <= max");
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = points == 1 ? min
                              : min + (max - min) * static_cast<double>(i) /
                                          static_cast<double>(points - 1);
    }
    return sweep_resonant(grid);
}

SweepTable sweep_fidelity(const FidelitySweepGrid& grid, GateSelection gates) {
    if (grid.lk_points == 0 || grid.lg_points == 0) {
        fail(ErrorCode::InvalidArgument, "sweep grids need at least one point per axis");
    }
    if (!(grid.lk_min > 0.0) || !(grid.lg_min > 0.0) || grid.lk_max < grid.lk_min ||
        grid.lg_max < grid.lg_min) {
        fail(ErrorCode::InvalidArgument, "sweep ranges must be positive and ordered");
    }

    SweepTable table;
    table.columns = {"lambda_over_kappa", "lambda_over_gamma", "p"};
    const bool with_cp = gates != GateSelection::CCPhaseOnly;
    const bool with_ccp = gates != GateSelection::CPhaseOnly;
    if (with_cp) {
        table.columns.push_back("F_cp");
        table.columns.push_back("eta_cp");
    }
    if (with_ccp) {
        table.columns.push_back("F_ccp");
        table.columns.push_back("eta_ccp");
    }

    auto axis = [](double lo, double hi, std::size_t n, std::size_t i) {
        return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    const std::size_t total = grid.lk_points * grid.lg_points;
    table.rows.assign(total, {});
    parallel_for(total, [&](std::size_t index) {
        const std::size_t i = index / grid.lg_points;
        const std::size_t j = index % grid.lg_points;
        const double lk = axis(grid.lk_min, grid.lk_max, grid.lk_points, i);
        const double lg = axis(grid.lg_min, grid.lg_max, grid.lg_points, j);
        // lambda = 1, kappa = 1/(lambda/kappa), gamma = 1/(lambda/gamma)
        const ResonantCoeffs c = resonant_coefficients(1.0 / lk, 1.0 / lg, 1.0);
        std::vector<double> row = {lk, lg, c.p};
        if (with_cp) {
            const AverageMetrics m = closed_form_cphase(c.p);
            row.push_back(m.fidelity);
            row.push_back(m.efficiency);
        }
        if (with_ccp) {
            const AverageMetrics m = closed_form_ccphase(c.p);
            row.push_back(m.fidelity);
            row.push_back(m.efficiency);
        }
        table.rows[index] = std::move(row);
    });
    return table;
}

std::string table_csv(const SweepTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) out += format_row(row);
    return out;
}

std::string table_json(const SweepTable& table) {
    nlohmann::ordered_json doc;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    return doc.dump(2) + "\n";
}

}

#pragma once

#include <string>
#include <vector>

#include "cavsim/protocol.hpp"
#include "cavsim/scattering.hpp"

namespace cavsim {

// |<ideal|realistic>|^2 with the realistic state deliberately NOT
// renormalized; sub-unit norm represents photon loss and must lower the
// fidelity. Throws RegisterMismatch on different register shapes.
double fidelity_joint(const StateVector& ideal, const StateVector& realistic);

// Success probability: norm^2 of the retained realistic state.
double efficiency_joint(const StateVector& realistic);

struct AverageMetrics {
    double fidelity;
    double efficiency;
};

// Closed-form angle averages:
//   cphase:   F = (19p^2 + 26p + 19)/64
//             eta = (p^4 - 2p^3 + 8p^2 + 2p + 7)/16
//   ccphase:  F = (89p^4 + 244p^3 + 638p^2 + 708p + 369)/2048
//             eta = (p^8 - 8p^7 + 40p^6 - 80p^5 + 154p^4 - 8p^3 + 144p^2
//                    + 96p + 173)/512
AverageMetrics closed_form_cphase(double p);
AverageMetrics closed_form_ccphase(double p);
AverageMetrics closed_form(GateKind kind, double p);

enum class MetricsSource { ClosedForm, Quadrature };

struct MetricsPoint {
    double p;
    double fidelity_avg;
    double efficiency_avg;
    MetricsSource source;
};

// Uniform product-rule quadrature of the pointwise fidelity/efficiency over
// the preparation angles a_j = cos(theta_j), b_j = sin(theta_j),
// theta_j in [0, 2pi). The integrands are trigonometric polynomials of low
// degree, so n_per_angle = 16 is already exact to rounding; fewer nodes raise
// InvalidSampleCount.
MetricsPoint average_by_quadrature(GateKind kind, double p, int n_per_angle);

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Resonant coefficients along a lambda/sqrt(kappa*gamma) grid;
// columns ratio, r0, t0, p.
SweepTable sweep_resonant(const std::vector<double>& lambda_ratio_grid);
SweepTable sweep_resonant_linspace(double min, double max, std::size_t points);

enum class GateSelection { CPhaseOnly, CCPhaseOnly, Both };

struct FidelitySweepGrid {
    double lk_min = 0.1, lk_max = 5.0;
    std::size_t lk_points = 99;
    double lg_min = 0.1, lg_max = 5.0;
    std::size_t lg_points = 99;
};

// Closed-form averages over a (lambda/kappa, lambda/gamma) grid; rows ordered
// by lambda/kappa then lambda/gamma. Grid points are evaluated concurrently
// (CAVSIM_THREADS) with deterministic row ordering.
SweepTable sweep_fidelity(const FidelitySweepGrid& grid, GateSelection gates);

// CSV with a header row, 12 significant digits, '\n' line endings; JSON
// mirrors the rows.
std::string table_csv(const SweepTable& table);
std::string table_json(const SweepTable& table);

}

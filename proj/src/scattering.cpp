#include "cavsim/scattering.hpp"

#include <cmath>

namespace cavsim {

namespace {

constexpr double kDegenerateThreshold = 1e-300;

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const SystemParams& p) {
    if (!finite(p.omega1) || !finite(p.omega2) || !finite(p.omega_ge) ||
        !finite(p.kappa1) || !finite(p.kappa2) || !finite(p.gamma) ||
        !finite(p.lambda1) || !finite(p.lambda2)) {
        fail(ErrorCode::InvalidArgument, "system parameters must be finite");
    }
    if (p.kappa1 < 0 || p.kappa2 < 0 || p.gamma < 0) {
        fail(ErrorCode::InvalidArgument, "decay rates must be non-negative");
    }
    if (p.lambda1 < 0 || p.lambda2 < 0) {
        fail(ErrorCode::InvalidArgument, "coupling strengths must be non-negative");
    }
}

SystemParams swap_ports(const SystemParams& p) {
    SystemParams s = p;
    std::swap(s.omega1, s.omega2);
    std::swap(s.kappa1, s.kappa2);
    std::swap(s.lambda1, s.lambda2);
    return s;
}

Detunings detunings(const SystemParams& p, double omega) {
    if (!finite(omega)) fail(ErrorCode::InvalidArgument, "omega must be finite");
    return {omega - p.omega1, omega - p.omega2, omega - p.omega_ge};
}

ScatterCoeffs scatter_coefficients(const SystemParams& p, double omega) {
    validate(p);
    const Detunings d = detunings(p, omega);
    const Complex i(0.0, 1.0);
    const Complex ge = 0.5 * p.gamma - i * d.delta_ge;
    const Complex l1sq = p.lambda1 * p.lambda1;
    const Complex l2sq = p.lambda2 * p.lambda2;

    const Complex bracket1 = (0.5 * p.kappa1 - i * d.delta1) * ge + l1sq;
    const Complex bracket2 = (0.5 * p.kappa2 - i * d.delta2) * ge + l2sq;
    const Complex denom = bracket1 * bracket2 - l1sq * l2sq;
    if (std::abs(denom) < kDegenerateThreshold) {
        fail(ErrorCode::DegenerateDenominator,
             "scattering denominator vanishes at this parameter point");
    }

    const Complex bracket1_out = (-0.5 * p.kappa1 - i * d.delta1) * ge + l1sq;
    const Complex r = (bracket1_out * bracket2 - l1sq * l2sq) / denom;
    const Complex t = p.lambda1 * p.lambda2 * std::sqrt(p.kappa1 * p.kappa2) * ge / denom;
    return {r, t};
}

Complex empty_cavity_reflection(double kappa1, double delta1) {
    if (!finite(kappa1) || !finite(delta1)) {
        fail(ErrorCode::InvalidArgument, "kappa1 and delta1 must be finite");
    }
    if (kappa1 < 0) fail(ErrorCode::InvalidArgument, "kappa1 must be non-negative");
    const Complex i(0.0, 1.0);
    const Complex denom = 0.5 * kappa1 - i * delta1;
    if (std::abs(denom) < kDegenerateThreshold) {
        fail(ErrorCode::DegenerateDenominator, "kappa1 = 0 and delta1 = 0");
    }
    return (-0.5 * kappa1 - i * delta1) / denom;
}

ResonantCoeffs resonant_coefficients(double kappa, double gamma, double lambda) {
    if (!finite(kappa) || !finite(gamma) || !finite(lambda)) {
        fail(ErrorCode::InvalidArgument, "rates must be finite");
    }
    if (kappa < 0 || gamma < 0 || lambda < 0) {
        fail(ErrorCode::InvalidArgument, "rates must be non-negative");
    }
    const double denom = kappa * gamma + 8.0 * lambda * lambda;
    if (denom < kDegenerateThreshold) {
        fail(ErrorCode::DegenerateDenominator, "kappa*gamma + 8*lambda^2 = 0");
    }
    ResonantCoeffs c;
    c.r0 = -kappa * gamma / denom;
    c.t0 = 8.0 * lambda * lambda / denom;
    c.p = c.r0 + c.t0;
    return c;
}

}

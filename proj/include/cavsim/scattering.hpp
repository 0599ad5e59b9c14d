#pragma once

#include "cavsim/error.hpp"
#include "cavsim/types.hpp"

namespace cavsim {

// Physical rates and frequencies of the double single-sided cavity system.
// Everything is an angular frequency in rad/s.
struct SystemParams {
    double omega1 = 0.0;    // cavity-1 resonance
    double omega2 = 0.0;    // cavity-2 resonance
    double omega_ge = 0.0;  // emitter transition frequency
    double kappa1 = 0.0;    // decay rate of the cavity-1 coupling mirror
    double kappa2 = 0.0;    // decay rate of the cavity-2 coupling mirror
    double gamma = 0.0;     // emitter spontaneous emission rate
    double lambda1 = 0.0;   // emitter / cavity-1 coupling strength
    double lambda2 = 0.0;   // emitter / cavity-2 coupling strength
};

// Throws InvalidArgument unless all entries are finite and the rates and
// couplings are non-negative.
void validate(const SystemParams& params);

// The same system as seen from port 2 (cavity indices exchanged).
SystemParams swap_ports(const SystemParams& params);

struct Detunings {
    double delta1;    // omega - omega1
    double delta2;    // omega - omega2
    double delta_ge;  // omega - omega_ge
};

struct ScatterCoeffs {
    Complex r;  // reflection amplitude back out of the driven port
    Complex t;  // transmission amplitude into the other port
};

// Resonant symmetric special case (kappa1 = kappa2 = kappa,
// lambda1 = lambda2 = lambda, all detunings zero). The coefficients are real
// with r0 in [-1, 0], t0 in [0, 1] and t0 = 1 + r0; p = r0 + t0 is the single
// scalar controlling realistic gate quality.
struct ResonantCoeffs {
    double r0;
    double t0;
    double p;
};

Detunings detunings(const SystemParams& params, double omega);

// Frequency-domain reflection/transmission of the full system for a probe at
// angular frequency omega. Throws DegenerateDenominator when the common
// denominator vanishes (measure-zero, unphysical parameter points).
ScatterCoeffs scatter_coefficients(const SystemParams& params, double omega);

// Reflection of the decoupled (lambda = 0) single-sided cavity,
// (-kappa1/2 - i delta1) / (kappa1/2 - i delta1). Unimodular whenever defined.
Complex empty_cavity_reflection(double kappa1, double delta1);

ResonantCoeffs resonant_coefficients(double kappa, double gamma, double lambda);

}

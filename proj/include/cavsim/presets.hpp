#pragma once

#include <string>
#include <vector>

#include "cavsim/scattering.hpp"

namespace cavsim {

struct Preset {
    std::string name;
    SystemParams params;
};

// Bundled parameter sets:
//   empty          decoupled emitter (lambda = 0), unit-rate cavities
//   weak2/3/4      lambda/kappa = lambda/gamma = 2, 3, 4 with kappa = gamma = 1 rad/s
//   strong         kappa^-1 = 20 us, gamma^-1 = 600 us, lambda/(2pi) = 28 MHz,
//                  cavities and emitter resonant at the 637 nm zero-phonon line
// The weak presets use a rotating-frame convention, omega = 0 for all modes;
// only detunings ever enter the dynamics.
const std::vector<Preset>& presets();

// nullptr if the name is unknown.
const SystemParams* find_preset(const std::string& name);

}

#include "cavsim/presets.hpp"

#include <numbers>

namespace cavsim {

namespace {

SystemParams symmetric(double omega, double kappa, double gamma, double lambda) {
    SystemParams p;
    p.omega1 = p.omega2 = p.omega_ge = omega;
    p.kappa1 = p.kappa2 = kappa;
    p.gamma = gamma;
    p.lambda1 = p.lambda2 = lambda;
    return p;
}

std::vector<Preset> make_presets() {
    constexpr double pi = std::numbers::pi;
    constexpr double c0 = 299792458.0;      // m/s
    constexpr double zpl_wavelength = 637e-9;  // m

    std::vector<Preset> list;
    list.push_back({"empty", symmetric(0.0, 1.0, 1.0, 0.0)});
    list.push_back({"weak2", symmetric(0.0, 1.0, 1.0, 2.0)});
    list.push_back({"weak3", symmetric(0.0, 1.0, 1.0, 3.0)});
    list.push_back({"weak4", symmetric(0.0, 1.0, 1.0, 4.0)});
    list.push_back({"strong", symmetric(2.0 * pi * c0 / zpl_wavelength,
                                        1.0 / 20e-6, 1.0 / 600e-6,
                                        2.0 * pi * 28e6)});
    return list;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = make_presets();
    return list;
}

const SystemParams* find_preset(const std::string& name) {
    for (const Preset& p : presets()) {
        if (p.name == name) return &p.params;
    }
    return nullptr;
}

}

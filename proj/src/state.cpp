#include "cavsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace cavsim {

namespace {

constexpr double kAmplitudeEps = 1e-15;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Index of the photon currently in flight, -1 if none. Labels of a valid
// state agree on which photon that is.
int in_flight_photon(const StateVector& s) {
    if (s.amplitudes().empty()) return -1;
    const BasisLabel& label = s.amplitudes().begin()->first;
    for (int i = 0; i < s.registers().n_photons; ++i) {
        if (label.path[i] != kNoPath) return i;
    }
    return -1;
}

void check_photon(const StateVector& s, int photon_index) {
    if (photon_index < 0 || photon_index >= s.registers().n_photons) {
        fail(ErrorCode::UnknownRegister, "photon index out of range");
    }
}

void check_nv(const StateVector& s, int nv_index) {
    if (nv_index < 0 || nv_index >= s.registers().n_nvs) {
        fail(ErrorCode::UnknownRegister, "NV index out of range");
    }
}

}  // namespace

StateVector::StateVector(Registers regs) : regs_(regs) {
    if (regs.n_photons < 0 || regs.n_photons > kMaxPhotons || regs.n_nvs < 0 ||
        regs.n_nvs > kMaxNvs) {
        fail(ErrorCode::InvalidArgument, "register counts out of range");
    }
}

Complex StateVector::amplitude(const BasisLabel& label) const {
    auto it = amps_.find(label);
    return it == amps_.end() ? Complex(0.0) : it->second;
}

void StateVector::add(const BasisLabel& label, Complex value) {
    Complex& slot = amps_[label];
    slot += value;
    if (std::abs(slot) < kAmplitudeEps) amps_.erase(label);
}

double StateVector::norm2() const {
    double total = 0.0;
    for (const auto& [label, amp] : amps_) total += std::norm(amp);
    return total;
}

StateVector photon_state(Complex a, Complex b) {
    StateVector s(Registers{1, 0});
    BasisLabel label;
    label.pol[0] = static_cast<std::uint8_t>(Pol::R);
    s.add(label, a);
    label.pol[0] = static_cast<std::uint8_t>(Pol::L);
    s.add(label, b);
    return s;
}

StateVector nv_state(Complex plus, Complex minus) {
    StateVector s(Registers{0, 1});
    BasisLabel label;
    label.nv[0] = static_cast<std::uint8_t>(Spin::Plus);
    s.add(label, plus);
    label.nv[0] = static_cast<std::uint8_t>(Spin::Minus);
    s.add(label, minus);
    return s;
}

StateVector nv_plus_superposition() { return nv_state(kInvSqrt2, kInvSqrt2); }

StateVector tensor(const StateVector& a, const StateVector& b) {
    const Registers ra = a.registers();
    const Registers rb = b.registers();
    if (ra.n_photons + rb.n_photons > kMaxPhotons || ra.n_nvs + rb.n_nvs > kMaxNvs) {
        fail(ErrorCode::InvalidArgument, "tensor product exceeds register capacity");
    }
    if (in_flight_photon(a) >= 0 && in_flight_photon(b) >= 0) {
        fail(ErrorCode::RegisterCollision, "both factors carry a photon in flight");
    }
    StateVector out(Registers{ra.n_photons + rb.n_photons, ra.n_nvs + rb.n_nvs});
    for (const auto& [la, va] : a.amplitudes()) {
        for (const auto& [lb, vb] : b.amplitudes()) {
            BasisLabel label = la;
            for (int i = 0; i < rb.n_photons; ++i) {
                label.pol[ra.n_photons + i] = lb.pol[i];
                label.path[ra.n_photons + i] = lb.path[i];
            }
            for (int j = 0; j < rb.n_nvs; ++j) label.nv[ra.n_nvs + j] = lb.nv[j];
            out.add(label, va * vb);
        }
    }
    return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (!(a.registers() == b.registers())) {
        fail(ErrorCode::RegisterMismatch, "inner product requires identical registers");
    }
    Complex total = 0.0;
    for (const auto& [label, va] : a.amplitudes()) {
        total += std::conj(va) * b.amplitude(label);
    }
    return total;
}

StateVector scale(const StateVector& a, Complex factor) {
    StateVector out(a.registers());
    for (const auto& [label, v] : a.amplitudes()) out.add(label, factor * v);
    return out;
}

StateVector add(const StateVector& a, const StateVector& b) {
    if (!(a.registers() == b.registers())) {
        fail(ErrorCode::RegisterMismatch, "sum requires identical registers");
    }
    StateVector result(a.registers());
    for (const auto& [label, v] : a.amplitudes()) result.add(label, v);
    for (const auto& [label, v] : b.amplitudes()) result.add(label, v);
    return result;
}

StateVector apply_hadamard_nv(const StateVector& s, int nv_index) {
    check_nv(s, nv_index);
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel plus = label;
        plus.nv[nv_index] = static_cast<std::uint8_t>(Spin::Plus);
        BasisLabel minus = label;
        minus.nv[nv_index] = static_cast<std::uint8_t>(Spin::Minus);
        if (label.nv[nv_index] == static_cast<std::uint8_t>(Spin::Plus)) {
            out.add(plus, v * kInvSqrt2);
            out.add(minus, v * kInvSqrt2);
        } else {
            out.add(plus, v * kInvSqrt2);
            out.add(minus, -v * kInvSqrt2);
        }
    }
    return out;
}

StateVector apply_hwp(const StateVector& s, int path, double angle_deg) {
    const bool is_h = std::abs(angle_deg - 22.5) < 1e-9;
    const bool is_swap = std::abs(angle_deg + 45.0) < 1e-9;
    if (!is_h && !is_swap) {
        fail(ErrorCode::UnsupportedAngle, "half-wave plate angle must be 22.5 or -45 degrees");
    }
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        int hit = -1;
        for (int i = 0; i < s.registers().n_photons; ++i) {
            if (label.path[i] == path) hit = i;
        }
        if (hit < 0) {
            out.add(label, v);
            continue;
        }
        BasisLabel r = label, l = label;
        r.pol[hit] = static_cast<std::uint8_t>(Pol::R);
        l.pol[hit] = static_cast<std::uint8_t>(Pol::L);
        const bool was_r = label.pol[hit] == static_cast<std::uint8_t>(Pol::R);
        if (is_h) {
            // R -> (R+L)/sqrt2, L -> (R-L)/sqrt2
            out.add(r, v * kInvSqrt2);
            out.add(l, was_r ? v * kInvSqrt2 : -v * kInvSqrt2);
        } else {
            // R -> -L, L -> R
            if (was_r) {
                out.add(l, -v);
            } else {
                out.add(r, v);
            }
        }
    }
    return out;
}

StateVector apply_pbs(const StateVector& s, int in_path, int transmit_path, int reflect_path) {
    const int flying = in_flight_photon(s);
    if (flying >= 0) {
        bool on_in = false, on_dest = false;
        for (const auto& [label, v] : s.amplitudes()) {
            if (label.path[flying] == in_path) on_in = true;
            if (label.path[flying] == transmit_path || label.path[flying] == reflect_path) {
                on_dest = true;
            }
        }
        if (on_in && on_dest) {
            fail(ErrorCode::PathOccupied, "PBS output path already carries this photon");
        }
    }
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel moved = label;
        for (int i = 0; i < s.registers().n_photons; ++i) {
            if (label.path[i] == in_path) {
                moved.path[i] = (label.pol[i] == static_cast<std::uint8_t>(Pol::R))
                                    ? static_cast<std::int8_t>(transmit_path)
                                    : static_cast<std::int8_t>(reflect_path);
            }
        }
        out.add(moved, v);
    }
    return out;
}

StateVector apply_nv_interaction(const StateVector& s, int path, int nv_index,
                                 int transmit_path, int reflect_path, double p) {
    check_nv(s, nv_index);
    if (!std::isfinite(p) || p < -1.0 || p > 1.0) {
        fail(ErrorCode::InvalidArgument, "interaction amplitude p must lie in [-1, 1]");
    }
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel moved = label;
        Complex factor = 1.0;
        for (int i = 0; i < s.registers().n_photons; ++i) {
            if (label.path[i] != path) continue;
            const bool is_l = label.pol[i] == static_cast<std::uint8_t>(Pol::L);
            const bool nv_minus = label.nv[nv_index] == static_cast<std::uint8_t>(Spin::Minus);
            // L|-> and R|+> transmit with amplitude p; the other two reflect
            // with amplitude -1.
            if (is_l == nv_minus) {
                moved.path[i] = static_cast<std::int8_t>(transmit_path);
                factor = p;
            } else {
                moved.path[i] = static_cast<std::int8_t>(reflect_path);
                factor = -1.0;
            }
        }
        out.add(moved, factor * v);
    }
    return out;
}

StateVector apply_sigma_z(const StateVector& s, int photon_index) {
    check_photon(s, photon_index);
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        const bool is_l = label.pol[photon_index] == static_cast<std::uint8_t>(Pol::L);
        out.add(label, is_l ? -v : v);
    }
    return out;
}

StateVector apply_merge(const StateVector& s, const std::vector<int>& sources, int destination) {
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel moved = label;
        for (int i = 0; i < s.registers().n_photons; ++i) {
            if (label.path[i] == kNoPath) continue;
            if (std::find(sources.begin(), sources.end(), label.path[i]) != sources.end()) {
                moved.path[i] = static_cast<std::int8_t>(destination);
            }
        }
        out.add(moved, v);
    }
    return out;
}

StateVector inject(const StateVector& s, int photon_index, int path) {
    check_photon(s, photon_index);
    if (in_flight_photon(s) >= 0) {
        fail(ErrorCode::PathOccupied, "another photon is already in flight");
    }
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel moved = label;
        moved.path[photon_index] = static_cast<std::int8_t>(path);
        out.add(moved, v);
    }
    return out;
}

StateVector end_flight(const StateVector& s) {
    const int flying = in_flight_photon(s);
    if (flying < 0) return s;
    StateVector out(s.registers());
    for (const auto& [label, v] : s.amplitudes()) {
        BasisLabel moved = label;
        moved.path[flying] = kNoPath;
        out.add(moved, v);
    }
    return out;
}

std::vector<MeasureBranch> measure_nv(const StateVector& s, int nv_index) {
    check_nv(s, nv_index);
    const double total = s.norm2();
    if (total < 1e-30) fail(ErrorCode::ZeroNormState, "cannot measure a zero state");

    std::vector<MeasureBranch> branches;
    for (Spin outcome : {Spin::Plus, Spin::Minus}) {
        StateVector projected(s.registers());
        for (const auto& [label, v] : s.amplitudes()) {
            if (label.nv[nv_index] == static_cast<std::uint8_t>(outcome)) {
                projected.add(label, v);
            }
        }
        const double part = projected.norm2();
        if (part <= 0.0) continue;
        branches.push_back(
            {outcome, part / total, scale(projected, 1.0 / std::sqrt(part))});
    }
    return branches;
}

StateVector project_nvs(const StateVector& s, const std::vector<Spin>& outcomes) {
    if (static_cast<int>(outcomes.size()) != s.registers().n_nvs) {
        fail(ErrorCode::RegisterMismatch, "one outcome required per NV register");
    }
    StateVector out(Registers{s.registers().n_photons, 0});
    for (const auto& [label, v] : s.amplitudes()) {
        bool keep = true;
        for (int j = 0; j < s.registers().n_nvs; ++j) {
            if (label.nv[j] != static_cast<std::uint8_t>(outcomes[j])) keep = false;
        }
        if (!keep) continue;
        BasisLabel stripped = label;
        stripped.nv = {};
        out.add(stripped, v);
    }
    return out;
}

std::string state_to_json_string(const StateVector& s) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    const Registers regs = s.registers();
    for (const auto& [label, v] : s.amplitudes()) {
        nlohmann::ordered_json pols = nlohmann::ordered_json::array();
        nlohmann::ordered_json paths = nlohmann::ordered_json::array();
        nlohmann::ordered_json nvs = nlohmann::ordered_json::array();
        for (int i = 0; i < regs.n_photons; ++i) {
            pols.push_back(label.pol[i] == static_cast<std::uint8_t>(Pol::R) ? "R" : "L");
            paths.push_back(static_cast<int>(label.path[i]));
        }
        for (int j = 0; j < regs.n_nvs; ++j) {
            nvs.push_back(label.nv[j] == static_cast<std::uint8_t>(Spin::Plus) ? "+" : "-");
        }
        entries.push_back({{"label", {{"pols", pols}, {"paths", paths}, {"nvs", nvs}}},
                           {"re", v.real()},
                           {"im", v.imag()}});
    }
    return entries.dump();
}

StateVector state_from_json_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid state JSON: ") + e.what());
    }
    if (!doc.is_array()) fail(ErrorCode::ParseError, "state JSON must be an array");

    StateVector out;
    bool first = true;
    for (const auto& entry : doc) {
        try {
            const auto& label_obj = entry.at("label");
            const auto& pols = label_obj.at("pols");
            const auto& paths = label_obj.at("paths");
            const auto& nvs = label_obj.at("nvs");
            if (!pols.is_array() || !paths.is_array() || !nvs.is_array() ||
                pols.size() != paths.size()) {
                fail(ErrorCode::ParseError, "malformed state label");
            }
            const Registers regs{static_cast<int>(pols.size()), static_cast<int>(nvs.size())};
            if (first) {
                out = StateVector(regs);
                first = false;
            } else if (!(regs == out.registers())) {
                fail(ErrorCode::ParseError, "inconsistent registers across state entries");
            }
            BasisLabel label;
            for (int i = 0; i < regs.n_photons; ++i) {
                const std::string pol = pols.at(i).get<std::string>();
                if (pol != "R" && pol != "L") fail(ErrorCode::ParseError, "polarization must be R or L");
                label.pol[i] = static_cast<std::uint8_t>(pol == "R" ? Pol::R : Pol::L);
                label.path[i] = static_cast<std::int8_t>(paths.at(i).get<int>());
            }
            for (int j = 0; j < regs.n_nvs; ++j) {
                const std::string spin = nvs.at(j).get<std::string>();
                if (spin != "+" && spin != "-") fail(ErrorCode::ParseError, "NV spin must be + or -");
                label.nv[j] = static_cast<std::uint8_t>(spin == "+" ? Spin::Plus : Spin::Minus);
            }
            out.add(label, Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, std::string("invalid state entry: ") + e.what());
        }
    }
    if (first) fail(ErrorCode::ParseError, "state JSON contains no entries");
    return out;
}

}

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cavsim/error.hpp"
#include "cavsim/types.hpp"

namespace cavsim {

enum class Pol : std::uint8_t { R = 0, L = 1 };
enum class Spin : std::uint8_t { Plus = 0, Minus = 1 };

constexpr int kMaxPhotons = 4;
constexpr int kMaxNvs = 4;
constexpr std::int8_t kNoPath = -1;

// One ket of the composite basis: a polarization per photon, the optical path
// of the photon currently in flight (kNoPath for photons at rest), and a spin
// per NV center. Unused slots stay at their defaults so labels compare
// component-wise through the raw arrays.
struct BasisLabel {
    std::array<std::uint8_t, kMaxPhotons> pol{};
    std::array<std::int8_t, kMaxPhotons> path{kNoPath, kNoPath, kNoPath, kNoPath};
    std::array<std::uint8_t, kMaxNvs> nv{};

    auto operator<=>(const BasisLabel&) const = default;
};

struct Registers {
    int n_photons = 0;
    int n_nvs = 0;
    bool operator==(const Registers&) const = default;
};

// Unnormalized complex amplitude map over basis labels. Sub-normalized states
// represent photon loss. Entries with |amplitude| < 1e-15 are pruned. All
// transformations below return fresh states; existing values are never
// mutated through the public API.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(Registers regs);

    const Registers& registers() const { return regs_; }
    const std::map<BasisLabel, Complex>& amplitudes() const { return amps_; }

    Complex amplitude(const BasisLabel& label) const;
    void add(const BasisLabel& label, Complex value);  // accumulates, then prunes
    double norm2() const;
    std::size_t size() const { return amps_.size(); }

    bool operator==(const StateVector&) const = default;

private:
    Registers regs_;
    std::map<BasisLabel, Complex> amps_;
};

// --- construction -----------------------------------------------------------

StateVector photon_state(Complex a, Complex b);          // a|R> + b|L>, one photon
StateVector nv_state(Complex plus, Complex minus);       // one NV spin
StateVector nv_plus_superposition();                     // (|+> + |->)/sqrt(2)

// Product state; registers concatenate (photon/NV indices of `b` shift past
// those of `a`). Throws RegisterCollision if both factors carry a photon in
// flight.
StateVector tensor(const StateVector& a, const StateVector& b);

// --- linear algebra ---------------------------------------------------------

Complex inner_product(const StateVector& a, const StateVector& b);
StateVector scale(const StateVector& a, Complex factor);
StateVector add(const StateVector& a, const StateVector& b);

// --- optical elements and NV operations -------------------------------------

StateVector apply_hadamard_nv(const StateVector& s, int nv_index);

// Only the two settings used by the protocols are implemented:
//   22.5 deg:  R -> (R+L)/sqrt(2),  L -> (R-L)/sqrt(2)
//   -45 deg:   R -> -L,             L -> R
StateVector apply_hwp(const StateVector& s, int path, double angle_deg);

// R amplitudes move to transmit_path, L amplitudes to reflect_path. Throws
// PathOccupied if the routed photon already has amplitude on a destination.
StateVector apply_pbs(const StateVector& s, int in_path, int transmit_path, int reflect_path);

// Photon-NV scattering with combined transmission amplitude p (ideal p = 1):
//   L|->  ->  p L|->  on transmit_path      R|+>  ->  p R|+>  on transmit_path
//   L|+>  -> -  L|+>  on reflect_path       R|->  -> -  R|->  on reflect_path
StateVector apply_nv_interaction(const StateVector& s, int path, int nv_index,
                                 int transmit_path, int reflect_path, double p);

StateVector apply_sigma_z(const StateVector& s, int photon_index);  // R -> R, L -> -L

// Coherently reroutes all amplitude on the source paths onto destination.
StateVector apply_merge(const StateVector& s, const std::vector<int>& sources, int destination);

// Puts a photon at rest into flight on `path` / takes the in-flight photon
// off its path (coherent recombination at the detector; amplitudes that end
// up on identical labels sum).
StateVector inject(const StateVector& s, int photon_index, int path);
StateVector end_flight(const StateVector& s);

// --- measurement ------------------------------------------------------------

struct MeasureBranch {
    Spin outcome;
    double probability;     // partial norm over total norm^2
    StateVector collapsed;  // renormalized within the branch
};

// Realized outcomes only (nonzero partial norm), Plus before Minus. Throws
// ZeroNormState on a zero state.
std::vector<MeasureBranch> measure_nv(const StateVector& s, int nv_index);

// Unnormalized projection of every NV register onto the given outcomes; the
// NV registers are dropped from the result.
StateVector project_nvs(const StateVector& s, const std::vector<Spin>& outcomes);

// --- serialization ----------------------------------------------------------

// JSON schema: array of {"label": {"pols": [...], "paths": [...], "nvs":
// [...]}, "re": x, "im": y}; lossless at double precision.
std::string state_to_json_string(const StateVector& s);
StateVector state_from_json_string(const std::string& text);

}

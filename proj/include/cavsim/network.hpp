#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cavsim/state.hpp"

namespace cavsim {

// Optical elements of a protocol network. Paths are 0-based; photon and NV
// indices are 0-based internally (1-based in the file format).
struct PbsElement {
    int in_path, transmit_path, reflect_path;
    bool operator==(const PbsElement&) const = default;
};
struct HwpElement {
    int path;
    double angle_deg;
    bool operator==(const HwpElement&) const = default;
};
struct NvElement {
    int path, nv_index, transmit_path, reflect_path;
    bool operator==(const NvElement&) const = default;
};
struct HadamardNvElement {
    int nv_index;
    bool operator==(const HadamardNvElement&) const = default;
};
struct MeasureElement {
    int nv_index;
    bool operator==(const MeasureElement&) const = default;
};
struct MergeElement {
    int destination;
    std::vector<int> sources;
    bool operator==(const MergeElement&) const = default;
};
struct SigmaZElement {
    int photon_index;
    bool operator==(const SigmaZElement&) const = default;
};

using Element = std::variant<PbsElement, HwpElement, NvElement, HadamardNvElement,
                             MeasureElement, MergeElement, SigmaZElement>;

// Photon `photon_index` enters on `path` immediately before element `step`
// executes (step == elements.size() injects after the last element).
struct Injection {
    int photon_index;
    int path;
    int step;
    bool operator==(const Injection&) const = default;
};

struct NetworkProgram {
    int n_paths = 0;
    int n_photons = 0;
    int n_nvs = 0;
    std::vector<Element> elements;    // executed in order
    std::vector<Injection> injections;
    bool operator==(const NetworkProgram&) const = default;
};

// Parses the line-based network description:
//   PATHS <n>                                  declares paths 0 .. n-1
//   INJECT photon <i> AT <path> STEP <k>       photons numbered from 1
//   PBS <in> <transmit> <reflect>
//   HWP <path> <angle>                         angle 22.5 or -45
//   NV <path> <nv_index> <transmit> <reflect>  NVs numbered from 1
//   HNV <nv_index>
//   MEASURE <nv_index>
//   MERGE <destination> <source> [<source>...]
// with '#' comments. Malformed input raises ParseError carrying line/column;
// semantic problems (undeclared paths, duplicate injections) raise
// ValidationError; an HWP angle outside the two supported settings raises
// UnsupportedAngle.
NetworkProgram parse_network(const std::string& text);

void validate_program(const NetworkProgram& program);

// a|R> + b|L> initial amplitudes of one photon.
struct PhotonInput {
    Complex a, b;
};

struct NetworkRun {
    StateVector joint;             // all flights ended, measurements pending
    std::vector<int> measured_nvs; // in MEASURE order
    std::vector<StateVector> trace;  // post-element states when requested
};

// Executes the program on sequentially injected photons. Each NV starts in
// (|+> + |->)/sqrt(2); every NV interaction uses the same transmission
// amplitude p. A photon's flight ends (its path label is dropped, merging
// coherently at the detector) when the next photon is injected or the
// program ends. MEASURE elements only record which NVs a report should
// resolve; they do not collapse the state here.
NetworkRun run_program(const NetworkProgram& program, const std::vector<PhotonInput>& photons,
                       double p, bool record_trace = false);

}

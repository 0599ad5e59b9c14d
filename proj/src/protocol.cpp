#include "cavsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace cavsim {

namespace {

constexpr double kNormTolerance = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_normalized(Complex a, Complex b, const char* which) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kNormTolerance) {
        fail(ErrorCode::InvalidSpec,
             std::string("photon ") + which + " amplitudes are not normalized");
    }
}

void check_p(double p) {
    if (!std::isfinite(p) || p < -1.0 || p > 1.0) {
        fail(ErrorCode::InvalidSpec, "p must lie in [-1, 1]");
    }
}

int n_photons(GateKind kind) { return kind == GateKind::CPhase ? 2 : 3; }
int n_nvs(GateKind kind) { return kind == GateKind::CPhase ? 1 : 2; }

std::vector<PhotonInput> to_inputs(const CPhaseSpec& s) {
    return {{s.a1, s.b1}, {s.a2, s.b2}};
}

std::vector<PhotonInput> to_inputs(const CCPhaseSpec& s) {
    return {{s.a1, s.b1}, {s.a2, s.b2}, {s.a3, s.b3}};
}

// Outcome patterns in lexicographic order, Plus before Minus, first NV most
// significant.
std::vector<std::vector<Spin>> outcome_patterns(int count) {
    std::vector<std::vector<Spin>> patterns;
    const int total = 1 << count;
    for (int mask = 0; mask < total; ++mask) {
        std::vector<Spin> pattern(count);
        for (int j = 0; j < count; ++j) {
            pattern[j] = ((mask >> (count - 1 - j)) & 1) ? Spin::Minus : Spin::Plus;
        }
        patterns.push_back(std::move(pattern));
    }
    return patterns;
}

BasisLabel photon_label(const std::vector<Pol>& pols) {
    BasisLabel label;
    for (std::size_t i = 0; i < pols.size(); ++i) {
        label.pol[i] = static_cast<std::uint8_t>(pols[i]);
    }
    return label;
}

StateVector ideal_output(const std::vector<PhotonInput>& photons) {
    const int n = static_cast<int>(photons.size());
    StateVector out(Registers{n, 0});
    for (int mask = 0; mask < (1 << n); ++mask) {
        Complex amp = 1.0;
        BasisLabel label;
        for (int i = 0; i < n; ++i) {
            const bool is_l = (mask >> (n - 1 - i)) & 1;
            label.pol[i] = static_cast<std::uint8_t>(is_l ? Pol::L : Pol::R);
            amp *= is_l ? photons[i].b : photons[i].a;
        }
        if (mask == (1 << n) - 1) amp = -amp;  // phase flip on the all-L component
        out.add(label, amp);
    }
    return out;
}

}  // namespace

void validate(const CPhaseSpec& s) {
    check_normalized(s.a1, s.b1, "1");
    check_normalized(s.a2, s.b2, "2");
}

void validate(const CCPhaseSpec& s) {
    check_normalized(s.a1, s.b1, "1");
    check_normalized(s.a2, s.b2, "2");
    check_normalized(s.a3, s.b3, "3");
}

// Layout of the two-photon protocol: the PBS splits line 1 into the detector
// line 3 (R) and the interaction line 4 (L); the NV scatters line 4 into
// line 6 (transmission) and line 5 (reflection); lines 3, 5 and 6 all end on
// the detector. Photon 2 passes the same PBS from line 2 with the roles of
// transmission and reflection exchanged.
NetworkProgram cphase_program() {
    NetworkProgram program;
    program.n_paths = 7;
    program.n_photons = 2;
    program.n_nvs = 1;
    program.injections = {{0, 1, 0}, {1, 2, 3}};
    program.elements = {
        PbsElement{1, 3, 4}, NvElement{4, 0, 6, 5}, HadamardNvElement{0},
        PbsElement{2, 4, 3}, NvElement{4, 0, 6, 5}, HadamardNvElement{0},
        MeasureElement{0},
    };
    return program;
}

// Three-photon protocol. Photons 1 and 2 are prepared against NV 1 and NV 2
// exactly like the two-photon control stage; photon 3 then traverses the
// five-PBS network: bypass line 2 for R, the 22.5-degree plate, system 1,
// recombination, a second 22.5-degree plate, system 2, the -45-degree plate,
// and the output combiner on line 0.
NetworkProgram ccphase_program() {
    NetworkProgram program;
    program.n_paths = 14;
    program.n_photons = 3;
    program.n_nvs = 2;
    program.injections = {{0, 1, 0}, {1, 1, 3}, {2, 1, 6}};
    program.elements = {
        // photon 1 preparation against NV 1
        PbsElement{1, 2, 3}, NvElement{3, 0, 4, 5}, HadamardNvElement{0},
        // photon 2 preparation against NV 2
        PbsElement{1, 2, 3}, NvElement{3, 1, 4, 5}, HadamardNvElement{1},
        // photon 3
        PbsElement{1, 2, 3},          // R bypasses on line 2
        HwpElement{3, 22.5},
        PbsElement{3, 4, 5},          // R toward system 1, L bypasses on line 5
        NvElement{4, 0, 6, 7},
        MergeElement{8, {6, 7, 5}},   // recombine system-1 output with the bypass
        HwpElement{8, 22.5},
        PbsElement{8, 9, 10},         // R toward system 2, L bypasses on line 10
        NvElement{9, 1, 11, 12},
        MergeElement{13, {11, 12}},
        HwpElement{13, -45.0},
        MergeElement{0, {13, 10, 2}},  // output combiner
        MeasureElement{0}, MeasureElement{1},
    };
    return program;
}

std::vector<int> correction_for(GateKind kind, const std::vector<Spin>& outcomes) {
    std::vector<int> photons;
    if (kind == GateKind::CPhase) {
        // Detecting |-> flips the sign of the L branch of photon 1.
        if (outcomes.at(0) == Spin::Minus) photons.push_back(0);
    } else {
        // The preparation stage leaves -b_j on the L branches; the |+>
        // record of NV j is the branch that keeps that sign.
        for (std::size_t j = 0; j < outcomes.size(); ++j) {
            if (outcomes[j] == Spin::Plus) photons.push_back(static_cast<int>(j));
        }
    }
    return photons;
}

GateReport make_report(GateKind kind, const NetworkProgram& program,
                       const std::vector<PhotonInput>& photons, double p) {
    check_p(p);
    if (static_cast<int>(photons.size()) != n_photons(kind)) {
        fail(ErrorCode::InvalidSpec, "wrong number of photons for this gate");
    }
    for (const PhotonInput& ph : photons) check_normalized(ph.a, ph.b, "input");

    const NetworkRun realistic = run_program(program, photons, p);
    const NetworkRun ideal = run_program(program, photons, 1.0);
    if (realistic.measured_nvs.size() != static_cast<std::size_t>(program.n_nvs)) {
        fail(ErrorCode::InvalidArgument, "gate programs must measure every NV register once");
    }
    for (int j = 0; j < program.n_nvs; ++j) {
        if (std::find(realistic.measured_nvs.begin(), realistic.measured_nvs.end(), j) ==
            realistic.measured_nvs.end()) {
            fail(ErrorCode::InvalidArgument, "gate programs must measure every NV register once");
        }
    }

    GateReport report;
    report.gate = kind;
    report.p = p;
    report.input = photons;
    report.joint_state = realistic.joint;
    report.ideal_reference = ideal_output(photons);
    report.fidelity = std::norm(inner_product(ideal.joint, realistic.joint));
    report.efficiency = realistic.joint.norm2();

    // The two-photon protocol detects the NV right after its own Hadamard;
    // the three-photon protocol is read out in the (|+> +- |->)/sqrt(2)
    // basis, realized as a Hadamard followed by a {+,-} detection.
    StateVector measured = realistic.joint;
    if (kind == GateKind::CCPhase) {
        for (int nv : realistic.measured_nvs) measured = apply_hadamard_nv(measured, nv);
    }
    const double total = measured.norm2();
    if (total > 1e-30) {
        for (const std::vector<Spin>& pattern : outcome_patterns(
                 static_cast<int>(realistic.measured_nvs.size()))) {
            StateVector branch = project_nvs(measured, pattern);
            const double part = branch.norm2();
            if (part <= 0.0) continue;
            StateVector corrected = scale(branch, 1.0 / std::sqrt(part));
            for (int photon : correction_for(kind, pattern)) {
                corrected = apply_sigma_z(corrected, photon);
            }
            report.outcomes.push_back({pattern, part / total, std::move(corrected)});
        }
    }
    return report;
}

GateReport run_cphase(const CPhaseSpec& spec, double p) {
    validate(spec);
    return make_report(GateKind::CPhase, cphase_program(), to_inputs(spec), p);
}

GateReport run_ccphase(const CCPhaseSpec& spec, double p) {
    validate(spec);
    return make_report(GateKind::CCPhase, ccphase_program(), to_inputs(spec), p);
}

StateVector analytic_state_cphase(const CPhaseSpec& s, double p) {
    validate(s);
    check_p(p);
    StateVector out(Registers{2, 1});
    const Complex a1 = s.a1, b1 = s.b1, a2 = s.a2, b2 = s.b2;
    const double q_plus = 0.5 * (p * p + 1.0);
    const double q_minus = 0.5 * (p * p - 2.0 * p - 1.0);

    auto put = [&out](Pol p1, Pol p2, Spin nv, Complex amp) {
        BasisLabel label = photon_label({p1, p2});
        label.nv[0] = static_cast<std::uint8_t>(nv);
        out.add(label, amp);
    };
    // |+> branch
    put(Pol::R, Pol::R, Spin::Plus, kInvSqrt2 * a1 * a2 * p);
    put(Pol::R, Pol::L, Spin::Plus, kInvSqrt2 * a1 * b2);
    put(Pol::L, Pol::R, Spin::Plus, kInvSqrt2 * b1 * a2 * q_plus);
    put(Pol::L, Pol::L, Spin::Plus, -kInvSqrt2 * b1 * b2);
    // |-> branch
    put(Pol::R, Pol::R, Spin::Minus, kInvSqrt2 * a1 * a2 * p);
    put(Pol::R, Pol::L, Spin::Minus, kInvSqrt2 * a1 * b2);
    put(Pol::L, Pol::R, Spin::Minus, kInvSqrt2 * b1 * a2 * q_minus);
    put(Pol::L, Pol::L, Spin::Minus, kInvSqrt2 * b1 * b2 * p);
    return out;
}

StateVector analytic_state_ccphase(const CCPhaseSpec& s, double p) {
    validate(s);
    check_p(p);
    StateVector out(Registers{3, 2});
    const double xi1 = p - 1.0;
    const double xi2 = p + 1.0;
    const double xi3 = 1.0 + 2.0 * p - p * p;

    auto put = [&out](Pol p1, Pol p2, Pol p3, Spin nv1, Spin nv2, Complex amp) {
        BasisLabel label = photon_label({p1, p2, p3});
        label.nv[0] = static_cast<std::uint8_t>(nv1);
        label.nv[1] = static_cast<std::uint8_t>(nv2);
        out.add(label, amp);
    };
    const Complex a1 = s.a1, b1 = s.b1, a2 = s.a2, b2 = s.b2, a3 = s.a3, b3 = s.b3;
    const Spin P = Spin::Plus, M = Spin::Minus;

    // a1 R1 a2 R2 branch
    put(Pol::R, Pol::R, Pol::R, P, P, a1 * a2 * a3);
    put(Pol::R, Pol::R, Pol::L, P, P, a1 * a2 * b3 * (xi3 / 2.0));
    // a1 R1 b2 L2 branch
    put(Pol::R, Pol::L, Pol::R, P, P, a1 * b2 * a3 * (xi1 / 2.0));
    put(Pol::R, Pol::L, Pol::R, P, M, -a1 * b2 * a3 * (xi2 / 2.0));
    put(Pol::R, Pol::L, Pol::L, P, P, a1 * b2 * b3 * (xi1 * xi3 / 4.0));
    put(Pol::R, Pol::L, Pol::L, P, M, -a1 * b2 * b3 * (2.0 * p * xi2 / 4.0));
    // b1 L1 a2 R2 branch
    put(Pol::L, Pol::R, Pol::R, P, P, b1 * a2 * a3 * (xi1 / 2.0));
    put(Pol::L, Pol::R, Pol::R, M, P, -b1 * a2 * a3 * (xi2 / 2.0));
    put(Pol::L, Pol::R, Pol::L, P, P, b1 * a2 * b3 * (xi1 * xi3 / 4.0));
    put(Pol::L, Pol::R, Pol::L, M, P, -b1 * a2 * b3 * (2.0 * p * xi2 / 4.0));
    // b1 L1 b2 L2 branch
    put(Pol::L, Pol::L, Pol::R, P, P, b1 * b2 * a3 * (xi1 * xi1 / 4.0));
    put(Pol::L, Pol::L, Pol::R, P, M, -b1 * b2 * a3 * (xi1 * xi2 / 4.0));
    put(Pol::L, Pol::L, Pol::R, M, P, -b1 * b2 * a3 * (xi2 * xi1 / 4.0));
    put(Pol::L, Pol::L, Pol::R, M, M, b1 * b2 * a3 * (xi2 * xi2 / 4.0));
    put(Pol::L, Pol::L, Pol::L, P, P, b1 * b2 * b3 * (xi1 * xi1 * xi3 / 8.0));
    put(Pol::L, Pol::L, Pol::L, P, M, -b1 * b2 * b3 * (2.0 * p * xi1 * xi2 / 8.0));
    put(Pol::L, Pol::L, Pol::L, M, P, -b1 * b2 * b3 * (2.0 * p * xi1 * xi2 / 8.0));
    put(Pol::L, Pol::L, Pol::L, M, M, -b1 * b2 * b3 * (2.0 * xi2 * xi2 / 8.0));
    return out;
}

StateVector ideal_output_cphase(const CPhaseSpec& s) {
    validate(s);
    return ideal_output(to_inputs(s));
}

StateVector ideal_output_ccphase(const CCPhaseSpec& s) {
    validate(s);
    return ideal_output(to_inputs(s));
}

std::vector<std::string> truth_table_basis(GateKind kind) {
    const int n = n_photons(kind);
    std::vector<std::string> basis;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::string name;
        for (int i = 0; i < n; ++i) name += ((mask >> (n - 1 - i)) & 1) ? 'L' : 'R';
        basis.push_back(name);
    }
    return basis;
}

std::vector<std::vector<Complex>> truth_table(GateKind kind, double p) {
    check_p(p);
    const int n = n_photons(kind);
    const int dim = 1 << n;
    const double branch_scale = std::sqrt(static_cast<double>(1 << n_nvs(kind)));
    const NetworkProgram program =
        kind == GateKind::CPhase ? cphase_program() : ccphase_program();

    std::vector<std::vector<Complex>> matrix(dim, std::vector<Complex>(dim, 0.0));
    for (int col = 0; col < dim; ++col) {
        std::vector<PhotonInput> photons(n);
        for (int i = 0; i < n; ++i) {
            const bool is_l = (col >> (n - 1 - i)) & 1;
            photons[i] = is_l ? PhotonInput{0.0, 1.0} : PhotonInput{1.0, 0.0};
        }
        const GateReport report = make_report(kind, program, photons, p);
        if (report.outcomes.empty()) continue;
        // First outcome branch, unnormalized, rescaled so the ideal case
        // reproduces the gate matrix exactly.
        const Outcome& principal = report.outcomes.front();
        const double branch_amp =
            std::sqrt(principal.probability * report.efficiency) * branch_scale;
        for (int row = 0; row < dim; ++row) {
            BasisLabel label;
            for (int i = 0; i < n; ++i) {
                label.pol[i] = static_cast<std::uint8_t>(((row >> (n - 1 - i)) & 1) ? Pol::L : Pol::R);
            }
            matrix[row][col] = branch_amp * principal.corrected.amplitude(label);
        }
    }
    return matrix;
}

std::string gate_report_json(const GateReport& report) {
    nlohmann::ordered_json doc;
    doc["gate"] = report.gate == GateKind::CPhase ? "cphase" : "ccphase";
    doc["p"] = report.p;

    nlohmann::ordered_json photons = nlohmann::ordered_json::array();
    for (const PhotonInput& ph : report.input) {
        photons.push_back(
            nlohmann::ordered_json::parse(state_to_json_string(photon_state(ph.a, ph.b))));
    }
    doc["input"]["photons"] = photons;
    doc["joint_state"] = nlohmann::ordered_json::parse(state_to_json_string(report.joint_state));
    doc["ideal_reference"] =
        nlohmann::ordered_json::parse(state_to_json_string(report.ideal_reference));
    doc["fidelity"] = report.fidelity;
    doc["efficiency"] = report.efficiency;

    const auto matrix = truth_table(report.gate, report.p);
    nlohmann::ordered_json table;
    table["basis"] = truth_table_basis(report.gate);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : matrix) {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (Complex v : row) entries.push_back({{"re", v.real()}, {"im", v.imag()}});
        rows.push_back(entries);
    }
    table["rows"] = rows;
    doc["truth_table"] = table;

    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (const Outcome& outcome : report.outcomes) {
        nlohmann::ordered_json spins = nlohmann::ordered_json::array();
        for (Spin spin : outcome.nv_outcomes) spins.push_back(spin == Spin::Plus ? "+" : "-");
        outcomes.push_back(
            {{"nv", spins},
             {"probability", outcome.probability},
             {"corrected_state",
              nlohmann::ordered_json::parse(state_to_json_string(outcome.corrected))}});
    }
    doc["outcomes"] = outcomes;
    return doc.dump(2) + "\n";
}

std::vector<PhotonInput> photon_inputs_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid input-state JSON: ") + e.what());
    }
    if (doc.is_object()) {
        if (doc.contains("photons")) {
            doc = doc["photons"];
        } else if (doc.contains("input") && doc["input"].contains("photons")) {
            doc = doc["input"]["photons"];
        }
    }
    if (!doc.is_array()) {
        fail(ErrorCode::ParseError, "expected an array of single-photon states");
    }
    std::vector<PhotonInput> photons;
    for (const auto& entry : doc) {
        const StateVector state = state_from_json_string(entry.dump());
        if (!(state.registers() == Registers{1, 0})) {
            fail(ErrorCode::ParseError, "each entry must be a single-photon state");
        }
        BasisLabel r, l;
        r.pol[0] = static_cast<std::uint8_t>(Pol::R);
        l.pol[0] = static_cast<std::uint8_t>(Pol::L);
        photons.push_back({state.amplitude(r), state.amplitude(l)});
    }
    return photons;
}

}

#pragma once

#include <string>
#include <vector>

#include "cavsim/network.hpp"

namespace cavsim {

enum class GateKind { CPhase, CCPhase };

// Input photon amplitudes; each pair must satisfy |a|^2 + |b|^2 = 1
// (within 1e-12, InvalidSpec otherwise).
struct CPhaseSpec {
    Complex a1, b1, a2, b2;
};

struct CCPhaseSpec {
    Complex a1, b1, a2, b2, a3, b3;
};

void validate(const CPhaseSpec& spec);
void validate(const CCPhaseSpec& spec);

struct Outcome {
    std::vector<Spin> nv_outcomes;
    double probability = 0.0;
    StateVector corrected;  // renormalized photon state after feed-forward
};

struct GateReport {
    GateKind gate = GateKind::CPhase;
    double p = 1.0;
    std::vector<PhotonInput> input;
    StateVector joint_state;      // photons x NVs before any measurement
    StateVector ideal_reference;  // corrected photon output of the ideal gate
    std::vector<Outcome> outcomes;
    double fidelity = 0.0;    // |<ideal joint|realistic joint>|^2, realistic unnormalized
    double efficiency = 0.0;  // norm^2 of the realistic joint state
};

// The two bundled optical networks (identical to data/cphase.net and
// data/ccphase.net).
NetworkProgram cphase_program();
NetworkProgram ccphase_program();

GateReport run_cphase(const CPhaseSpec& spec, double p);
GateReport run_ccphase(const CCPhaseSpec& spec, double p);

// Shared backend: executes the given program and resolves the NV
// measurements/feed-forward for the given gate kind. Lets a parsed network
// file be checked against the builtin gates end to end.
GateReport make_report(GateKind kind, const NetworkProgram& program,
                       const std::vector<PhotonInput>& photons, double p);

// Closed-form realistic joint states, transcribed term by term; used only as
// oracles against the network simulation.
StateVector analytic_state_cphase(const CPhaseSpec& spec, double p);
StateVector analytic_state_ccphase(const CCPhaseSpec& spec, double p);

// Direct ideal corrected output: the input product state with the sign of the
// all-L component flipped.
StateVector ideal_output_cphase(const CPhaseSpec& spec);
StateVector ideal_output_ccphase(const CCPhaseSpec& spec);

// Photons that receive a sigma_z correction for a given measurement record.
std::vector<int> correction_for(GateKind kind, const std::vector<Spin>& outcomes);

// Corrected-output amplitudes on the computational basis, photon 1 outermost,
// R before L. Columns are inputs. At p = 1 these are exactly the gate
// matrices; for p < 1 the entries come from the first NV outcome branch,
// unnormalized and scaled by sqrt(#outcomes).
std::vector<std::vector<Complex>> truth_table(GateKind kind, double p);
std::vector<std::string> truth_table_basis(GateKind kind);

// Full machine-readable report (joint state, truth table, per-outcome
// corrected states, pointwise fidelity/efficiency) as a JSON document.
std::string gate_report_json(const GateReport& report);

// Photon inputs from a JSON array of single-photon states (or an object with
// a "photons" member holding one).
std::vector<PhotonInput> photon_inputs_from_json(const std::string& text);

}

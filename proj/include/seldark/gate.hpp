#pragma once

#include "seldark/drive.hpp"
#include "seldark/evolve.hpp"
#include "seldark/numerics.hpp"
#include "seldark/system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace seldark {

// |Tr(gate^dagger target)| / 4. Both arguments must be 4x4 and unitary within 1e-6.
double fidelity(const CMatrix& gate, const CMatrix& target);

// Same overlap without the unitarity check, for computational blocks of leaky gates.
double overlap_fidelity(const CMatrix& gate, const CMatrix& target);

// Standard CNOT, control qubit 1, target qubit 2.
CMatrix cnot_matrix();

// Diagonal (1, 1) block on |00>, |01> and -i e^{-i phi1} at (2,3), -i e^{+i phi1} at (3,2).
CMatrix ideal_cnot_target(double phi1);

// Local invariants of a two-qubit gate in the magic basis:
//   m = U_B^T U_B with U_B = Q^dagger U Q, G1 = tr(m)^2 / (16 det U), G2 = (tr(m)^2 - tr(m^2)) / (4 det U).
// CNOT has G1 = 0, G2 = 1.
struct MakhlinInvariants {
  cplx g1;
  cplx g2;
  bool equivalent_to_cnot = false; // |G1 - 0| and |G2 - 1| below 1e-8
};
MakhlinInvariants makhlin_invariants(const CMatrix& u);

struct CorrectionEstimates {
  double stark_shift = 0.0;         // a1^2 / (2 (E2 - E0 - omega)), GHz
  double bloch_siegert_shift = 0.0; // a1^2 / (2 (E2 - E0 + omega)), GHz
  double cphase_ratio = 0.0;        // <2|V|0> / <3|V|1>
  double cphase_angle = 0.0;        // rad accumulated over the pulse
};

// The shift scales with the squared envelope, so the angle integrates env(t)^2 over the pulse.
CorrectionEstimates correction_estimates(const SystemSpec& spec, const DriveSpec& drive);

// (pi/2) / t_gate, GHz for t_gate in ns.
double effective_coupling(double t_gate);

enum class CorrectionMode { analytic, phase, arbitrary };
std::string to_string(CorrectionMode m);
CorrectionMode correction_mode_from_string(const std::string& name);

// Ideal gate in the computational eigenbasis for the driven pair: identity elsewhere and
// exp(-i pi/2 [[0, V*], [V, 0]] / |V|) on the pair, V the co-rotating element of the drive.
CMatrix driven_cnot_target(const SystemSpec& spec, const DriveSpec& drive, int target_qubit, Polarity polarity);

// Half-Rabi-period estimate 1 / (4 |V|), times pi/2 for the half-sine envelope.
double estimated_gate_time(const SystemSpec& spec, const DriveSpec& drive, int target_qubit, Polarity polarity);

// Single-qubit corrections in the computational eigenbasis (index 2 q1 + q2).
// Phase: (L1, L2, R1, R2) angles of diag(1, e^{i a}); gate -> (L1 x L2) U (R1 x R2).
// Arbitrary: four ZYZ rotations Rz(a) Ry(b) Rz(c), parameters ordered L1, L2, R1, R2.
CMatrix apply_phase_correction(const CMatrix& u, const std::vector<double>& p);
CMatrix apply_arbitrary_correction(const CMatrix& u, const std::vector<double>& p);
// Analytic: diag(1, 1, e^{i phi}, e^{i phi}) U.
CMatrix apply_control_phase(const CMatrix& u, double phi);

// Control-qubit phase that undoes the ac-Stark and Bloch-Siegert shifts over the pulse.
double analytic_control_phase(const SystemSpec& spec, const DriveSpec& drive);

struct CalibrationOptions {
  CorrectionMode mode = CorrectionMode::analytic;
  std::uint64_t seed = 0;
  int target_qubit = 2;
  Polarity polarity = Polarity::cnot1;
  int jobs = 1;
  int scan_points = 20;
  double window = 0.15; // relative half-width of the gate-time scan
  int poly_degree = 4;
  int restarts = 8;
  double optimizer_tolerance = 1e-10;
  int optimizer_max_iterations = 5000;
  PropagationOptions scan_propagation{1e-8};
  PropagationOptions final_propagation{};
};

struct GateEvaluation {
  CMatrix raw;       // interaction-picture computational block (Larmor precession removed)
  CMatrix corrected; // after the mode's corrections
  double fidelity = 0.0;
  std::vector<double> params;
  double leakage = 0.0; // 1 - ||block||_F^2 / 4
};

// Propagates at drive.t_gate and applies the mode's correction.
GateEvaluation evaluate_gate(const InteractionModel& model, const DriveSpec& drive, const CMatrix& target,
                             const CalibrationOptions& opts, const PropagationOptions& prop);

struct GateResult {
  CMatrix unitary; // corrected computational block
  double fidelity = 0.0;
  double t_gate = 0.0;
  double j_eff = 0.0;
  CorrectionMode correction_mode = CorrectionMode::analytic;
  std::vector<double> correction_params;
  double leakage = 0.0;
  double t_estimate = 0.0;
  std::vector<double> scan_times;
  std::vector<double> scan_fidelities;
};

// Gate-time calibration: scan, degree-4 fit, interior argmax, re-simulation. The drive template
// must already satisfy the darkening condition; its t_gate is ignored.
GateResult calibrate_gate(const SystemSpec& spec, const DriveSpec& drive_template, const CalibrationOptions& opts);

} // namespace seldark

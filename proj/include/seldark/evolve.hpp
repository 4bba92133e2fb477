#pragma once

#include "seldark/drive.hpp"
#include "seldark/numerics.hpp"
#include "seldark/system.hpp"

#include <vector>

namespace seldark {

enum class FrameChoice { lab, rotating_rwa };

struct PropagationOptions {
  double tolerance = 1e-10;          // max-norm difference between successive refinements
  double unitarity_tolerance = 1e-9; // ||U^dagger U - I||_max
  int max_halvings = 12;
  double steps_per_period = 200.0;   // initial step = 1 / (steps_per_period * f_max)
};

struct PropagationResult {
  CMatrix unitary;
  long step_count = 0; // steps of the accepted (finest) integration
  double unitarity_defect = 0.0;
  FrameChoice frame = FrameChoice::lab;
};

// Drive-free Hamiltonian in its exact eigenbasis plus the drive operators in that basis. The
// drive operators are real because the Hamiltonian is real and eigenvectors follow the phase rule.
struct InteractionModel {
  SystemSpec spec;
  Eigensystem eig;
  RMatrix x1, x2; // label order
};

InteractionModel make_interaction_model(const SystemSpec& spec);

// Highest frequency present in the interaction-picture generator: omega plus the largest
// eigen-gap joined by a non-negligible drive element.
double interaction_max_frequency(const InteractionModel& model, const DriveSpec& drive);

// RK4 with a fixed number of steps for U_I(t1, t0) = exp(i2pi H0 t1) U_lab(t1, t0) exp(-i2pi H0 t0),
// applied to the basis columns `columns` (labels). t1 < t0 integrates backwards.
CMatrix integrate_interaction(const InteractionModel& model, const DriveSpec& drive, const std::vector<int>& columns,
                              double t0, double t1, long steps);

// Step-halving driver around integrate_interaction over [0, t_gate]. The result holds the
// interaction-picture columns (eigenbasis, label order); unitarity_defect is that of the isometry.
PropagationResult propagate_interaction(const InteractionModel& model, const DriveSpec& drive,
                                        const std::vector<int>& columns, const PropagationOptions& opts = {});

// Lab frame: product-basis propagator U(t_gate). Rotating RWA (levels == 2): eigenbasis propagator of
// H0 - u + env(t) V.
PropagationResult propagate(const SystemSpec& spec, const DriveSpec& drive, FrameChoice frame,
                            const PropagationOptions& opts = {});

// Product-basis lab propagator from an interaction-picture propagator over [0, t].
CMatrix interaction_to_lab(const InteractionModel& model, const CMatrix& u_int, double t);

// Product-basis lab propagator from a rotating-frame propagator over [0, t] (levels == 2).
CMatrix rotating_to_lab(const SystemSpec& spec, double omega, const CMatrix& u_rot, double t);

} // namespace seldark

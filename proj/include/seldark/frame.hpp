#pragma once

#include "seldark/drive.hpp"
#include "seldark/numerics.hpp"
#include "seldark/system.hpp"

namespace seldark {

// Generator u = diag(-omega, 0, 0, +omega) of the rotating frame exp(i 2pi u t), two-level only.
struct RotatingFrame {
  RVector u;
  double omega = 0.0;
};

RotatingFrame make_rotating_frame(double omega);

// Drive in the rotating frame, eigenbasis in label order: V + W(t) with
//   V_kl = 1/2 sum_i a_i e^{-i phi_i} X^i_kl and W_kl(t) = 1/2 sum_i a_i e^{+i phi_i} X^i_kl e^{i 2pi 2 omega t}
// for the pairs (k, l) = (1,0), (2,0), (3,2), (3,1); the upper triangle is the Hermitian conjugate.
// Elements (2,1) and (3,0) vanish identically.
struct DriveSplit {
  CMatrix v;           // time independent
  CMatrix w_amplitude; // lower triangle only; multiply by e^{i 2pi 2 omega t}
  double omega = 0.0;
};

struct RotatingFrameHamiltonian {
  CMatrix h0; // H0 - u, diagonal
  DriveSplit drive;
};

CMatrix w_at(const DriveSplit& split, double t);

// Uses the exact eigensystem of `spec`. The envelope of `drive` is ignored (unit amplitude).
RotatingFrameHamiltonian to_rotating_frame(const SystemSpec& spec, const DriveSpec& drive, const RotatingFrame& frame);

// exp(i 2pi u t) H exp(-i 2pi u t) - u for an eigenbasis operator H (the frame-change rule).
CMatrix transform_to_rotating(const CMatrix& h_eig, const RotatingFrame& frame, double t);
// Inverse of transform_to_rotating.
CMatrix transform_to_lab(const CMatrix& h_rot, const RotatingFrame& frame, double t);

struct GateFactors {
  CMatrix phase;  // exp(-i 2pi H0~ t)
  CMatrix flip;   // exp(-i 2pi t [[0, V32*], [V32, 0]]) on the {2,3} block
  CMatrix larmor; // diag(exp(-i 2pi E_k t)), the lab-frame left factor
};

// Ideal decomposition keeping only the {2,3} co-rotating element. Rotating frame: phase * flip.
// Lab frame: larmor * flip.
GateFactors rwa_gate_decomposition(const SystemSpec& spec, const DriveSpec& drive, double t);

} // namespace seldark

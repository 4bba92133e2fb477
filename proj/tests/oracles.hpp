#pragma once

#include "seldark/drive.hpp"
#include "seldark/numerics.hpp"
#include "seldark/system.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace oracle {

using seldark::CMatrix;
using seldark::cplx;

// Pade/scaling-squaring exponential from Eigen's unsupported module.
inline CMatrix expm(const CMatrix& a) { return a.exp(); }

inline CMatrix evolution(const CMatrix& h, double t) {
  return expm(CMatrix(-seldark::kI * seldark::kTwoPi * t * h));
}

// Fourth-order Magnus integrator (two Gauss points) in the product basis, lab frame.
inline CMatrix magnus_propagator(const seldark::SystemSpec& spec, const seldark::DriveSpec& drive, long steps,
                                 double t_end = -1.0) {
  const double t1 = t_end < 0 ? drive.t_gate : t_end;
  const CMatrix h0 = seldark::build_hamiltonian(spec);
  const long n = steps;
  const double h = t1 / static_cast<double>(n);
  const double c = std::sqrt(3.0) / 6.0;
  CMatrix u = CMatrix::Identity(h0.rows(), h0.cols());
  for (long k = 0; k < n; ++k) {
    const double ta = k * h + (0.5 - c) * h, tb = k * h + (0.5 + c) * h;
    const CMatrix a1 = -seldark::kI * seldark::kTwoPi * (h0 + seldark::drive_hamiltonian(spec, drive, ta));
    const CMatrix a2 = -seldark::kI * seldark::kTwoPi * (h0 + seldark::drive_hamiltonian(spec, drive, tb));
    const CMatrix omega = 0.5 * h * (a1 + a2) + (std::sqrt(3.0) / 12.0) * h * h * (a2 * a1 - a1 * a2);
    u = expm(omega) * u;
  }
  return u;
}

inline CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline CMatrix random_unitary(int n, std::mt19937_64& rng) {
  return evolution(random_hermitian(n, rng), 0.3);
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace oracle

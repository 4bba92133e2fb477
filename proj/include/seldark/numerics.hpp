#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace seldark {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

struct EigenDecomposition {
  RVector values;  // ascending
  CMatrix vectors; // orthonormal columns
};

// Largest |A - A^dagger| entry.
double max_asymmetry(const CMatrix& a);

// Max-norm of U^dagger U - I.
double unitarity_defect(const CMatrix& u);

// Throws ConfigError if A is not Hermitian within 1e-12 * max|entry|.
// Each eigenvector is rotated so its largest-magnitude entry is real and positive
// (ties broken by lowest index).
EigenDecomposition eig_hermitian(const CMatrix& a);

// exp(A) for anti-Hermitian A, via the spectral decomposition of -iA.
CMatrix matrix_exp_antihermitian(const CMatrix& a);

// exp(-i 2pi H t) for Hermitian H in GHz and t in ns.
CMatrix propagator(const CMatrix& h, double t);

// Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);

} // namespace seldark

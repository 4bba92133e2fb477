#include "seldark/numerics.hpp"

#include "seldark/errors.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace seldark {

double max_asymmetry(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
  const auto n = u.cols();
  return (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

namespace {

void check_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw ConfigError(os.str());
  }
}

void fix_phase(CMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double m = v.col(k).cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, k)) >= m * (1.0 - 1e-9)) {
        pick = i;
        break;
      }
    }
    const cplx z = v(pick, k);
    v.col(k) *= std::conj(z) / std::abs(z);
    v(pick, k) = std::abs(v(pick, k)); // drop rounding residue in the imaginary part
  }
}

} // namespace

EigenDecomposition eig_hermitian(const CMatrix& a) {
  check_square(a, "eig_hermitian");
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = max_asymmetry(a);
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (max asymmetry " << asym << ")";
    throw ConfigError(os.str());
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ComputationError("eig_hermitian: eigensolver failed");
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phase(out.vectors);
  return out;
}

CMatrix matrix_exp_antihermitian(const CMatrix& a) {
  check_square(a, "matrix_exp_antihermitian");
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  const double dev = (a + a.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale) {
    std::ostringstream os;
    os << "matrix_exp_antihermitian: matrix is not anti-Hermitian (max deviation " << dev << ")";
    throw ConfigError(os.str());
  }
  // A = iH with H Hermitian.
  const CMatrix h = -kI * 0.5 * (a - a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw ComputationError("matrix_exp_antihermitian: eigensolver failed");
  const auto& w = solver.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, w(k));
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix propagator(const CMatrix& h, double t) {
  return matrix_exp_antihermitian(-kI * (kTwoPi * t) * h);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

} // namespace seldark

#include "seldark/system.hpp"

#include "seldark/errors.hpp"

#include <cmath>
#include <sstream>

namespace seldark {

void validate(const SystemSpec& spec) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(spec.delta1) || !finite(spec.delta2) || !finite(spec.j))
    throw ConfigError("system: delta1, delta2 and j must be finite");
  if (spec.delta1 <= 0.0) throw ConfigError("system.delta1: must be > 0");
  if (spec.delta2 <= 0.0) throw ConfigError("system.delta2: must be > 0");
  if (spec.levels != 2 && spec.levels != 3) throw ConfigError("system.levels: must be 2 or 3");
  if (spec.levels == 2) {
    if (spec.anharm1 || spec.anharm2)
      throw ConfigError("system.anharm1/anharm2: anharmonicities are only meaningful for levels = 3");
    return;
  }
  if (!spec.anharm1 || !spec.anharm2)
    throw ConfigError("system.anharm1/anharm2: required for levels = 3");
  if (!finite(*spec.anharm1) || !finite(*spec.anharm2))
    throw ConfigError("system.anharm1/anharm2: must be finite");
  if (spec.delta1 + *spec.anharm1 <= 0.0) throw ConfigError("system.anharm1: delta1 + anharm1 must be > 0");
  if (spec.delta2 + *spec.anharm2 <= 0.0) throw ConfigError("system.anharm2: delta2 + anharm2 must be > 0");
}

CMatrix sigma_x(int levels) {
  CMatrix x = CMatrix::Zero(levels, levels);
  x(0, 1) = x(1, 0) = 1.0;
  if (levels == 3) x(1, 2) = x(2, 1) = std::sqrt(2.0);
  return x;
}

CMatrix site_energies(int levels, double splitting, double anharm) {
  CMatrix h = CMatrix::Zero(levels, levels);
  h(0, 0) = -splitting / 2.0;
  h(1, 1) = splitting / 2.0;
  if (levels == 3) h(2, 2) = 1.5 * splitting + anharm;
  return h;
}

CMatrix drive_operator(const SystemSpec& spec, int qubit) {
  const CMatrix id = CMatrix::Identity(spec.levels, spec.levels);
  const CMatrix x = sigma_x(spec.levels);
  if (qubit == 1) return kron(x, id);
  if (qubit == 2) return kron(id, x);
  throw ConfigError("drive_operator: qubit must be 1 or 2");
}

CMatrix build_hamiltonian(const SystemSpec& spec) {
  validate(spec);
  const int n = spec.levels;
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix h1 = site_energies(n, spec.delta1, spec.anharm1.value_or(0.0));
  const CMatrix h2 = site_energies(n, spec.delta2, spec.anharm2.value_or(0.0));
  const CMatrix x = sigma_x(n);
  return kron(h1, id) + kron(id, h2) + spec.j * kron(x, x);
}

const std::vector<int>& product_index_of_label(int levels) {
  static const std::vector<int> two{0, 1, 2, 3};
  // |00> |01> |10> |11> |02> |20> |12> |21> |22>
  static const std::vector<int> three{0, 1, 3, 4, 2, 6, 5, 7, 8};
  if (levels == 2) return two;
  if (levels == 3) return three;
  throw ConfigError("product_index_of_label: levels must be 2 or 3");
}

MixingAngles mixing_angles(double delta1, double delta2, double j) {
  MixingAngles m{};
  m.theta1 = std::atan(2.0 * j / (delta1 + delta2));
  const double dd = delta1 - delta2;
  m.theta2 = dd == 0.0 ? std::copysign(std::numbers::pi / 2.0, j) : std::atan(2.0 * j / dd);
  m.theta_plus = 0.5 * (m.theta1 + m.theta2);
  m.theta_minus = 0.5 * (m.theta2 - m.theta1);
  return m;
}

namespace {

// Closed-form two-level eigenstates, column per label.
CMatrix closed_form_states(const MixingAngles& m) {
  const double c1 = std::cos(m.theta1 / 2), s1 = std::sin(m.theta1 / 2);
  const double c2 = std::cos(m.theta2 / 2), s2 = std::sin(m.theta2 / 2);
  CMatrix v = CMatrix::Zero(4, 4);
  v(0, 0) = c1; v(3, 0) = -s1;
  v(1, 1) = c2; v(2, 1) = -s2;
  v(2, 2) = c2; v(1, 2) = s2;
  v(3, 3) = c1; v(0, 3) = s1;
  return v;
}

// Within each cluster of (numerically) degenerate eigenvalues, replace the solver's arbitrary
// basis by the projections of the reference states that best match the cluster.
void align_degenerate_clusters(const RVector& w, CMatrix& v, const CMatrix& refs, double tol) {
  const Eigen::Index n = w.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && w(stop) - w(stop - 1) <= tol) ++stop;
    const Eigen::Index size = stop - start;
    if (size > 1) {
      const CMatrix basis = v.middleCols(start, size);
      // Weight of each reference inside the cluster subspace; pick the `size` heaviest.
      const RVector weight = (basis.adjoint() * refs).colwise().squaredNorm().transpose();
      std::vector<Eigen::Index> order(refs.cols());
      for (Eigen::Index k = 0; k < refs.cols(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight(a) > weight(b); });
      CMatrix picked(refs.rows(), size);
      for (Eigen::Index k = 0; k < size; ++k) picked.col(k) = basis * (basis.adjoint() * refs.col(order[k]));
      Eigen::HouseholderQR<CMatrix> qr(picked);
      CMatrix q = qr.householderQ() * CMatrix::Identity(refs.rows(), size);
      // Householder Q may flip phases; re-project so each column stays close to its reference.
      for (Eigen::Index k = 0; k < size; ++k) {
        const cplx ov = q.col(k).dot(picked.col(k));
        if (std::abs(ov) > 0) q.col(k) *= ov / std::abs(ov);
      }
      v.middleCols(start, size) = q;
    }
    start = stop;
  }
}

void fix_phase_rule(CMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double m = v.col(k).cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (std::abs(v(i, k)) >= m * (1.0 - 1e-9)) {
        pick = i;
        break;
      }
    const cplx z = v(pick, k);
    v.col(k) *= std::conj(z) / std::abs(z);
    v(pick, k) = std::abs(v(pick, k));
  }
}

// Returns eigen-index -> reference index, or an empty vector if the assignment is ambiguous.
std::vector<int> assign_by_overlap(const CMatrix& v, const CMatrix& refs, std::string* why) {
  const Eigen::Index n = v.cols();
  std::vector<int> out(n, -1);
  std::vector<int> owner(refs.cols(), -1);
  const RMatrix ov = (refs.adjoint() * v).cwiseAbs2();
  for (Eigen::Index e = 0; e < n; ++e) {
    Eigen::Index best;
    const double o = ov.col(e).maxCoeff(&best);
    if (o < 0.5 - 1e-12 || owner[best] >= 0) {
      if (why) {
        std::ostringstream os;
        os << "eigenstate " << e << " (best reference " << best << ", overlap^2 " << o << ")";
        if (owner[best] >= 0) os << " collides with eigenstate " << owner[best];
        *why = os.str();
      }
      return {};
    }
    owner[best] = static_cast<int>(e);
    out[e] = static_cast<int>(best);
  }
  return out;
}

} // namespace

Eigensystem exact_eigensystem(const SystemSpec& spec) {
  const CMatrix h = build_hamiltonian(spec);
  const int dim = dimension(spec);
  const auto& prod_of_label = product_index_of_label(spec.levels);

  const EigenDecomposition eig = eig_hermitian(h);
  CMatrix v = eig.vectors;
  const double tol = 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff());

  // Reference states in label order.
  CMatrix product_refs = CMatrix::Zero(dim, dim);
  for (int l = 0; l < dim; ++l) product_refs(prod_of_label[l], l) = 1.0;

  MixingAngles angles{};
  if (spec.levels == 2) angles = mixing_angles(spec.delta1, spec.delta2, spec.j);
  const CMatrix& refs = spec.levels == 2 ? closed_form_states(angles) : product_refs;

  align_degenerate_clusters(eig.values, v, refs, tol);
  fix_phase_rule(v);

  std::string why;
  std::vector<int> assign = assign_by_overlap(v, product_refs, &why);
  if (assign.empty() && spec.levels == 2) {
    // Near D1 == D2 the middle pair is maximally mixed; fall back to the closed-form states,
    // which are exact eigenstates for any coupling.
    assign = assign_by_overlap(v, refs, nullptr);
  }
  if (assign.empty()) throw LabelingError("labeling ambiguous: " + why);

  Eigensystem out;
  out.energies.resize(dim);
  out.states.resize(dim, dim);
  out.labels = assign;
  for (int e = 0; e < dim; ++e) {
    out.energies(assign[e]) = eig.values(e);
    out.states.col(assign[e]) = v.col(e);
  }
  if (spec.levels == 2) {
    out.theta1 = angles.theta1;
    out.theta2 = angles.theta2;
    out.theta_plus = angles.theta_plus;
    out.theta_minus = angles.theta_minus;
  } else {
    out.theta1 = out.theta2 = out.theta_plus = out.theta_minus = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

WeakCouplingStates weak_coupling_states(const SystemSpec& spec) {
  validate(spec);
  const double dd = spec.delta1 - spec.delta2;
  if (dd == 0.0) throw ConfigError("weak_coupling_states: delta1 == delta2 makes perturbation theory singular");
  const double d1 = spec.delta1, d2 = spec.delta2, j = spec.j;
  const int dim = dimension(spec);
  const auto& prod = product_index_of_label(spec.levels);

  WeakCouplingStates out;
  out.coupling_warning = std::abs(j / dd) > 0.2;
  out.states = CMatrix::Zero(dim, dim);
  out.energies.resize(dim);
  for (int l = 0; l < dim; ++l) out.states(prod[l], l) = 1.0;

  const double r = j / dd;
  out.amplitudes.emplace_back("j_over_ddelta", r);
  out.states(prod[2], 1) = -r;
  out.states(prod[1], 2) = r;

  const double e0 = -(d1 + d2) / 2, e1 = (-d1 + d2) / 2, e2 = (d1 - d2) / 2, e3 = (d1 + d2) / 2;
  if (spec.levels == 2) {
    out.energies << e0, e1 - j * j / dd, e2 + j * j / dd, e3;
    return out;
  }

  const double a1 = *spec.anharm1, a2 = *spec.anharm2;
  const double s2 = std::sqrt(2.0);
  const double r302 = s2 * j / (dd - a2);     // |02> in |3>
  const double r320 = s2 * j / (dd + a1);     // |20> in |3>
  const double r6 = -2 * j / (dd + a1 - a2);  // |21> in |6>, orthogonal to |7> at first order
  const double r7 = 2 * j / (dd + a1 - a2);   // |12> in |7>
  out.amplitudes.emplace_back("sqrt2_j_over_ddelta_minus_anharm2", r302);
  out.amplitudes.emplace_back("sqrt2_j_over_ddelta_plus_anharm1", r320);
  out.amplitudes.emplace_back("minus_2j_over_ddelta_plus_anharm1_minus_anharm2", r6);
  out.amplitudes.emplace_back("2j_over_ddelta_plus_anharm1_minus_anharm2", r7);

  // labels: 3=|11>, 4=|02>, 5=|20>, 6=|12>, 7=|21>
  out.states(prod[4], 3) = r302;
  out.states(prod[5], 3) = -r320;
  out.states(prod[3], 4) = -r302;
  out.states(prod[3], 5) = r320;
  out.states(prod[7], 6) = r6;
  out.states(prod[6], 7) = r7;

  const double jj = j * j;
  out.energies(0) = e0;
  out.energies(1) = e1 - jj / dd;
  out.energies(2) = e2 + jj / dd;
  out.energies(3) = e3 + 2 * jj / (dd - a2) - 2 * jj / (dd + a1);
  out.energies(4) = -d1 / 2 + 1.5 * d2 + a2 - 2 * jj / (dd - a2);
  out.energies(5) = 1.5 * d1 - d2 / 2 + a1 + 2 * jj / (dd + a1);
  out.energies(6) = d1 / 2 + 1.5 * d2 + a2 - 4 * jj / (dd + a1 - a2);
  out.energies(7) = 1.5 * d1 + d2 / 2 + a1 + 4 * jj / (dd + a1 - a2);
  // |22> carries both anharmonic offsets.
  out.energies(8) = 1.5 * d1 + 1.5 * d2 + a1 + a2;
  return out;
}

} // namespace seldark

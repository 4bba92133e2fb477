#include "seldark/chain.hpp"

#include "seldark/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace seldark {

namespace {

int sites(const ChainSpec& spec) { return static_cast<int>(spec.deltas.size()); }

std::uint32_t site_bit(int n, int site) { return 1u << (n - 1 - site); }

void require_site(const ChainSpec& spec, int site, const char* what) {
  if (site < 0 || site >= sites(spec)) {
    std::ostringstream os;
    os << what << ": site " << site << " outside 0.." << sites(spec) - 1;
    throw ConfigError(os.str());
  }
}

} // namespace

void validate(const ChainSpec& spec) {
  const int n = sites(spec);
  if (n < 2) throw ConfigError("chain.deltas: need at least 2 sites");
  if (n > kMaxChainSites) {
    std::ostringstream os;
    os << "chain.deltas: " << n << " sites exceeds the dense limit of " << kMaxChainSites;
    throw ConfigError(os.str());
  }
  if (static_cast<int>(spec.js.size()) != n - 1) throw ConfigError("chain.js: expected n - 1 couplings");
  for (double d : spec.deltas)
    if (!std::isfinite(d) || d <= 0.0) throw ConfigError("chain.deltas: splittings must be finite and > 0");
  for (double j : spec.js)
    if (!std::isfinite(j)) throw ConfigError("chain.js: couplings must be finite");
  if (!spec.allow_degenerate) {
    std::vector<double> d = spec.deltas;
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) != d.end())
      throw ConfigError("chain.deltas: repeated splittings need allow_degenerate");
  }
}

RMatrix build_chain_real(const ChainSpec& spec) {
  validate(spec);
  const int n = sites(spec);
  const std::uint32_t dim = 1u << n;
  RMatrix h = RMatrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int s = 0; s < n; ++s) diag += (b & site_bit(n, s)) ? spec.deltas[s] / 2 : -spec.deltas[s] / 2;
    h(b, b) = diag;
    for (int s = 0; s + 1 < n; ++s) h(b ^ (site_bit(n, s) | site_bit(n, s + 1)), b) += spec.js[s];
  }
  return h;
}

CMatrix build_chain(const ChainSpec& spec) { return build_chain_real(spec).cast<cplx>(); }

SingleParticleSpectrum jw_single_particle(const ChainSpec& spec, JwMode mode) {
  validate(spec);
  const int n = sites(spec);
  RMatrix a = RMatrix::Zero(n, n), b = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = spec.deltas[i];
  for (int i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = a(i + 1, i) = spec.js[i];
    b(i, i + 1) = spec.js[i];
    b(i + 1, i) = -spec.js[i];
  }

  SingleParticleSpectrum out;
  RMatrix u(n, n), v = RMatrix::Zero(n, n);
  RVector e(n);
  if (mode == JwMode::rwa) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
    e = es.eigenvalues();
    u = es.eigenvectors().transpose();
  } else {
    RMatrix m(2 * n, 2 * n);
    m << a, b, -b, -a;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m);
    // Upper half of the particle-hole symmetric spectrum.
    for (int k = 0; k < n; ++k) {
      e(k) = es.eigenvalues()(n + k);
      u.row(k) = es.eigenvectors().col(n + k).head(n).transpose();
      v.row(k) = es.eigenvectors().col(n + k).tail(n).transpose();
    }
  }

  // Order modes by dominant site when one-to-one.
  std::vector<int> site_of(n);
  for (int k = 0; k < n; ++k) u.row(k).cwiseAbs().maxCoeff(&site_of[k]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> sorted = site_of;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
    std::sort(order.begin(), order.end(), [&](int x, int y) { return site_of[x] < site_of[y]; });

  out.energies.resize(n);
  out.modes.psi.resize(n, n);
  out.holes.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    const double sign = u(src, site_of[src]) < 0 ? -1.0 : 1.0;
    out.energies(k) = e(src);
    out.modes.psi.row(k) = sign * u.row(src);
    out.holes.row(k) = sign * v.row(src);
  }
  if (mode == JwMode::full) {
    out.ground_energy = -0.5 * e.sum();
  } else {
    // Number-conserving model: the vacuum is the ground state when every mode energy is positive.
    out.ground_energy = -0.5 * std::accumulate(spec.deltas.begin(), spec.deltas.end(), 0.0);
  }
  return out;
}

ConditionalRabi conditional_rabi_elements(const ChainSpec& spec, int drive_site, int flip_site) {
  validate(spec);
  require_site(spec, drive_site, "conditional_rabi_elements: drive_site");
  require_site(spec, flip_site, "conditional_rabi_elements: flip_site");
  const int n = sites(spec);
  const std::uint32_t dim = 1u << n;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(build_chain_real(spec));
  const RMatrix& vecs = es.eigenvectors();

  // product index -> eigen index
  std::vector<int> eig_of(dim, -1);
  for (std::uint32_t k = 0; k < dim; ++k) {
    Eigen::Index p;
    const double w = vecs.col(k).cwiseAbs2().maxCoeff(&p);
    if (w <= 0.5) {
      std::ostringstream os;
      os << "labeling ambiguous: chain eigenstate " << k << " has largest product overlap " << w << " <= 0.5";
      throw LabelingError(os.str());
    }
    if (eig_of[p] != -1) {
      std::ostringstream os;
      os << "labeling ambiguous: two chain eigenstates map to product state " << p;
      throw LabelingError(os.str());
    }
    eig_of[p] = static_cast<int>(k);
  }

  auto state = [&](std::uint32_t p) {
    RVector v = vecs.col(eig_of[p]);
    Eigen::Index q;
    v.cwiseAbs().maxCoeff(&q);
    return v(q) < 0 ? RVector(-v) : v;
  };

  const std::uint32_t flip = site_bit(n, flip_site), drive = site_bit(n, drive_site);
  ConditionalRabi out;
  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (std::uint32_t b = 0; b < dim; ++b) {
    if (b & flip) continue;
    const RVector v0 = state(b), v1 = state(b | flip);
    double el = 0.0;
    for (std::uint32_t p = 0; p < dim; ++p) el += v1(p ^ drive) * v0(p);
    out.elements.push_back({b, cplx(el, 0.0)});
    const double m = std::abs(el);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    sum += m;
  }
  const double mean = sum / static_cast<double>(out.elements.size());
  if (mean == 0.0) throw ComputationError("conditional_rabi_elements: all elements vanish");
  out.spread = (hi - lo) / mean;
  return out;
}

double effective_long_range_tunneling(const ChainSpec& spec, int i, int j) {
  validate(spec);
  require_site(spec, i, "effective_long_range_tunneling: i");
  require_site(spec, j, "effective_long_range_tunneling: j");
  if (!(i < j)) throw ConfigError("effective_long_range_tunneling: requires i < j");
  double t = spec.js[j - 1];
  for (int m = i; m < j - 1; ++m) {
    const double d = spec.deltas[m] - spec.deltas[m + 1];
    if (d == 0.0) {
      std::ostringstream os;
      os << "effective_long_range_tunneling: sites " << m << " and " << m + 1 << " share a splitting";
      throw ConfigError(os.str());
    }
    t *= spec.js[m] / d;
  }
  return t;
}

} // namespace seldark

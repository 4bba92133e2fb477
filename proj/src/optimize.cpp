#include "seldark/optimize.hpp"

#include "seldark/errors.hpp"
#include "seldark/parallel.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

namespace seldark {

namespace {

struct GslCallback {
  const Objective* f;
  int evaluations = 0;
};

double gsl_trampoline(const gsl_vector* v, void* params) {
  auto* cb = static_cast<GslCallback*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  ++cb->evaluations;
  const double y = (*cb->f)(x);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

} // namespace

MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& x0, double initial_step,
                           double size_tolerance, int max_iterations) {
  const std::size_t n = x0.size();
  if (n == 0) throw ConfigError("nelder_mead: empty parameter vector");
  gsl_set_error_handler_off();
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n)), step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set(step.get(), i, initial_step);
  }
  GslCallback cb{&f};
  gsl_multimin_function fn{&gsl_trampoline, n, &cb};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  if (gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get()) != GSL_SUCCESS)
    throw ComputationError("nelder_mead: could not initialise the simplex");

  MinimizeResult r;
  for (int it = 0; it < max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), size_tolerance) == GSL_SUCCESS) {
      r.converged = true;
      break;
    }
  }
  r.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.x[i] = gsl_vector_get(m->x, i);
  r.value = m->fval;
  r.evaluations = cb.evaluations;
  return r;
}

MinimizeResult minimize_with_restarts(const Objective& f, const std::vector<double>& seed_point,
                                      const RestartOptions& opts) {
  if (opts.restarts < 1) throw ConfigError("minimize_with_restarts: restarts must be >= 1");
  std::vector<MinimizeResult> results(static_cast<std::size_t>(opts.restarts));
  parallel_for(results.size(), opts.jobs, [&](std::size_t r) {
    std::vector<double> start = seed_point;
    if (r > 0) {
      std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> dist(-opts.range, opts.range);
      for (auto& v : start) v = dist(rng);
    }
    results[r] = nelder_mead(f, start, opts.initial_step, opts.size_tolerance, opts.max_iterations);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].value < results[best].value) best = r;
  return results[best];
}

double Polynomial::operator()(double x) const {
  const double u = (x - center) / scale;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Polynomial fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  if (x.size() != y.size() || x.size() < static_cast<std::size_t>(degree + 1))
    throw ConfigError("fit_polynomial: need at least degree + 1 samples of matching length");
  Polynomial p;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  p.center = 0.5 * (*lo + *hi);
  p.scale = std::max(0.5 * (*hi - *lo), 1e-300);
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (x[i] - p.center) / p.scale;
    double pw = 1.0;
    for (int k = 0; k <= degree; ++k) {
      a(i, k) = pw;
      pw *= u;
    }
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  p.coeffs.assign(c.data(), c.data() + c.size());
  return p;
}

PolyArgmax polynomial_argmax(const Polynomial& p, double lo, double hi) {
  constexpr int grid = 400;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double v = p(lo + (hi - lo) * i / grid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  PolyArgmax out;
  if (best == 0 || best == grid) {
    out.x = best == 0 ? lo : hi;
    out.value = best_val;
    out.on_boundary = true;
    return out;
  }
  const double a = lo + (hi - lo) * (best - 1) / grid;
  const double b = lo + (hi - lo) * (best + 1) / grid;
  const auto [x, negv] = boost::math::tools::brent_find_minima([&](double t) { return -p(t); }, a, b, 52);
  out.x = x;
  out.value = -negv;
  return out;
}

} // namespace seldark

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace seldark {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead simplex (GSL nmsimplex2) until the simplex size drops below `size_tolerance`
// or `max_iterations` iterations have run.
MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& x0, double initial_step,
                           double size_tolerance, int max_iterations);

struct RestartOptions {
  int restarts = 8;
  double size_tolerance = 1e-10;
  int max_iterations = 5000;
  double initial_step = 0.5;
  double range = 3.141592653589793; // random starts uniform in [-range, range]
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Restart 0 starts at `seed_point`; restart r > 0 starts at a point drawn from an mt19937_64
// stream seeded by (seed, r). Returns the best result (lowest value, ties to the lowest restart).
MinimizeResult minimize_with_restarts(const Objective& f, const std::vector<double>& seed_point,
                                      const RestartOptions& opts);

// Least-squares polynomial fit; coefficients in increasing powers of (x - center) / scale.
struct Polynomial {
  std::vector<double> coeffs;
  double center = 0.0;
  double scale = 1.0;
  double operator()(double x) const;
};

Polynomial fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree);

struct PolyArgmax {
  double x = 0.0;
  double value = 0.0;
  bool on_boundary = false;
};

// Maximum of p over [lo, hi]: dense grid bracket refined with Brent's method.
PolyArgmax polynomial_argmax(const Polynomial& p, double lo, double hi);

} // namespace seldark

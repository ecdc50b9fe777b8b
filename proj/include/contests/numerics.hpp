#ifndef CONTESTS_NUMERICS_HPP
#define CONTESTS_NUMERICS_HPP

#include <functional>
#include <span>
#include <vector>

#include "contests/errors.hpp"

namespace contests {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

// Definite integral of f over [a, b] by tanh-sinh (double-exponential)
// substitution with level doubling. Node offsets are measured from the
// nearer endpoint, so integrable power singularities t^alpha, alpha > -1,
// at either end need no special casing. The error estimate is the
// difference between the last two refinement levels; refinement stops once
// it drops below tol (absolute) or the level budget runs out, in which case
// a QuadratureFailure carrying the best estimate is thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-10);

// Same scheme for a vector-valued integrand sharing evaluation points:
// f(t, out) must fill every slot of out. Refinement stops when all
// components meet tol.
std::vector<QuadratureResult> integrate_many(
    const std::function<void(double, std::span<double>)>& f,
    std::size_t components, double a, double b, double tol = 1e-10);

// ln Beta(a, b) via lgamma; requires a, b > 0.
double log_beta(double a, double b);

// Exact binomial coefficient as a double (small n; rank weights).
double binomial_coefficient(int n, int k);

// Regularized lower incomplete gamma P(a, x): series for small x,
// continued fraction otherwise.
double gamma_p(double a, double x);

// Solves g(x) = target for nondecreasing g on [lo, hi]. Safeguarded
// bisection with a secant probe; never steps outside the bracket. Stops
// when |g(x) - target| <= tol or the bracket width drops to tol.
double invert_monotone(const std::function<double(double)>& g, double target,
                       double lo, double hi, double tol = 1e-12);

struct CrossingReport {
  int count = 0;
  std::vector<double> locations;  // interpolated zero inside each bracketing cell
};

// Counts strict sign changes of curve_a - curve_b sampled on a shared,
// strictly increasing grid of at least 3 points. Differences inside the
// dead band are treated as coincidence, not crossings; dead_band < 0
// selects 1e-9 * (max|a| + max|b|).
CrossingReport crossing_count(std::span<const double> grid,
                              std::span<const double> curve_a,
                              std::span<const double> curve_b,
                              double dead_band = -1.0);

}  // namespace contests

#endif

#ifndef CONTESTS_DISTRIBUTION_HPP
#define CONTESTS_DISTRIBUTION_HPP

#include <memory>
#include <string>
#include <vector>

#include "contests/interpolation.hpp"

namespace contests {

enum class Family { power, reflected_power, tabulated };

// Ability distribution on [0, 1]. Ability here is a marginal cost of effort,
// so lower draws are stronger types. Closed-form families:
//   power(p):           F(x) = x^p,           p > 0
//   reflected_power(p): F(x) = 1 - (1 - x)^p, p > 0
// The tabulated family interpolates a strictly increasing CDF table with a
// shape-preserving cubic, so its density is the interpolant derivative.
class Distribution {
 public:
  static Distribution power(double p);
  static Distribution reflected_power(double p);
  static Distribution tabulated(std::vector<double> thetas,
                                std::vector<double> cdf_values);
  // Two-column text table (theta, F) with a header row.
  static Distribution tabulated_from_file(const std::string& path);

  double cdf(double theta) const;
  double pdf(double theta) const;
  double quantile(double t) const;

  bool has_density_derivative() const { return family_ != Family::tabulated; }
  double pdf_derivative(double theta) const;

  Family family() const { return family_; }
  // Shape parameter p for the closed-form families, NaN for tabulated.
  double shape() const { return p_; }
  std::string describe() const;

 private:
  Distribution() = default;
  void check_invariants() const;

  Family family_ = Family::power;
  double p_ = 0.0;
  std::shared_ptr<const MonotoneCubic> table_;
};

// h(t) = t / F^{-1}(t), computed with family-specific formulas that stay
// finite for subnormal t (the equilibrium integrands probe very close to 0).
double h_value(const Distribution& d, double t);

struct HProfile {
  double h;
  double h_prime;
};

// h and h'(t) at t in (0, 1]. h'(t) uses the identity
// h'(t) = (x f(x) - F(x)) / (f(x) x^2) with x = F^{-1}(t) whenever the
// density is usable there, otherwise a central difference on h.
HProfile h_profile(const Distribution& d, double t);

struct Assumption1Probe {
  double theta;
  double density_times_cdf;       // f(theta) F(theta)
  double theta_sq_over_quantile;  // theta^2 / F^{-1}(theta)
};

struct Assumption1Report {
  bool passed = false;
  std::vector<Assumption1Probe> tail_samples;
};

// Probes both tail quantities on theta = 2^-5 .. 2^-30. A tail passes when
// it is nonincreasing toward zero: either the last value is already below
// 1e-4 or the geometric decay rate across the last probes is clearly
// positive (slowly vanishing tails such as theta^0.2 extrapolate to zero).
Assumption1Report validate_assumption1(const Distribution& d);

enum class Monotonicity { increasing, decreasing, indeterminate };
enum class Curvature { concave, convex, indeterminate };
enum class ClassifyMethod { closed_form, numeric };

struct HClassification {
  Monotonicity monotonicity = Monotonicity::indeterminate;
  Curvature curvature = Curvature::indeterminate;
  ClassifyMethod method = ClassifyMethod::numeric;
  // |h'| < 1e-9 across the probe grid: h is flat (uniform-like law), so the
  // monotone/curvature labels are the weak conventions, not strict facts.
  bool flat = false;
};

// Shape of h: closed-form labels for the parametric families
//   power:           p >= 1 increasing+concave, 1/2 < p < 1 decreasing+convex
//   reflected_power: p >= 1 decreasing+concave, p < 1 increasing+convex
// (p = 1 is labeled by the p >= 1 branch and flagged flat). Tabulated input,
// or force_numeric, classifies by sign tests of h' and second differences on
// a 512-point grid with slack 1e-9; mixed signs give indeterminate, and an
// all-flat profile reports the weak (increasing, concave) convention.
HClassification classify_h(const Distribution& d, bool force_numeric = false);

// First-order stochastic dominance of effort distributions needs the CDFs
// ordered pointwise: true when f.cdf(x) <= g.cdf(x) + 1e-12 on a 1024 grid.
bool cdf_dominated_by(const Distribution& f, const Distribution& g);

// Direction of f on (0, 1); closed form for the parametric families (a
// constant density counts as weakly increasing), numeric grid test otherwise.
Monotonicity density_monotonicity(const Distribution& d);

// Direction of f(x) x^2 / F(x)^2, the quantity whose monotonicity drives the
// curvature of h (increasing => h convex, decreasing => h concave). Constant
// profiles count as weakly decreasing.
Monotonicity curvature_driver_monotonicity(const Distribution& d);

}  // namespace contests

#endif

#include "contests/contest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contests/numerics.hpp"

namespace contests {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

void check_rank_args(int n, int i) {
  if (n < 2) throw ValidationError("contest: needs n >= 2");
  if (i < 1 || i > n) {
    std::ostringstream msg;
    msg << "contest: rank " << i << " outside 1.." << n;
    throw ValidationError(msg.str());
  }
}

void require_assumption1(const Distribution& d) {
  if (!validate_assumption1(d).passed)
    throw NumericError(
        "contest: distribution fails the vanishing-tail requirement near 0 (" +
        d.describe() + ")");
}

// -sum_{j<=i} p_j'(t) = (n-1) C(n-2, i-1) t^{i-1} (1-t)^{n-1-i}: the
// positive prize-gap weight for i in 1..n-1.
double gap_weight_coefficient(int n, int i) {
  return (n - 1) * binomial_coefficient(n - 2, i - 1);
}

bool marginal_effect_converges_at_zero(const Distribution& d, int i) {
  switch (d.family()) {
    case Family::power:
      // integrand ~ t^{max(i-2, 0) - 1/p} near 0
      return (i >= 3) || d.shape() > 1.0;
    case Family::reflected_power:
      // F^{-1}(t) ~ t/p, so ranks 1 and 2 pick up a 1/t factor
      return i >= 3;
    case Family::tabulated:
      return true;  // no closed form; let the quadrature decide
  }
  return true;
}

}  // namespace

RankProbability rank_probability(int n, int i, double t) {
  check_rank_args(n, i);
  if (!(t >= 0.0) || t > 1.0)
    throw ValidationError("rank_probability: t must lie in [0, 1]");
  const double c = binomial_coefficient(n - 1, i - 1);
  RankProbability out;
  out.p = c * ipow(t, i - 1) * ipow(1.0 - t, n - i);
  const double rise =
      (i == 1) ? 0.0 : (i - 1) * ipow(t, i - 2) * ipow(1.0 - t, n - i);
  const double fall =
      (i == n) ? 0.0 : (n - i) * ipow(t, i - 1) * ipow(1.0 - t, n - i - 1);
  out.p_prime = c * (rise - fall);
  return out;
}

PrizeVector::PrizeVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2)
    throw ValidationError("PrizeVector: needs at least 2 prizes");
  double scale = 0.0;
  for (double v : values_) scale = std::max(scale, std::abs(v));
  const double slack = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw ValidationError("PrizeVector: prizes must be finite");
    if (i + 1 < values_.size() && values_[i] + slack < values_[i + 1])
      throw ValidationError("PrizeVector: prizes must be nonincreasing");
  }
  if (values_.back() < -slack)
    throw ValidationError("PrizeVector: prizes must be nonnegative");
}

double PrizeVector::total() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

std::string PrizeVector::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < values_.size(); ++i)
    out << (i ? ", " : "") << values_[i];
  out << ")";
  return out.str();
}

double marginal_effect(const Distribution& d, int n, int i, double theta,
                       double tol) {
  check_rank_args(n, i);
  if (!(theta >= 0.0) || theta > 1.0)
    throw ValidationError("marginal_effect: theta must lie in [0, 1]");
  require_assumption1(d);
  if (theta == 1.0) return 0.0;
  if (theta == 0.0 && !marginal_effect_converges_at_zero(d, i)) {
    std::ostringstream msg;
    msg << "marginal_effect: m_" << i << "(0) diverges for " << d.describe();
    throw NumericError(msg.str());
  }
  const double lower = d.cdf(theta);
  return integrate(
             [&d, n, i](double t) {
               return -rank_probability(n, i, t).p_prime / d.quantile(t);
             },
             lower, 1.0, tol)
      .value;
}

std::vector<double> make_theta_grid(int points, double theta_min,
                                    double theta_max) {
  if (points < 2) throw ValidationError("make_theta_grid: needs >= 2 points");
  if (!(theta_min > 0.0) || !(theta_min < theta_max) || theta_max > 1.0)
    throw ValidationError("make_theta_grid: needs 0 < theta_min < theta_max <= 1");
  std::vector<double> grid(points);
  for (int j = 0; j < points; ++j)
    grid[j] = theta_min + (theta_max - theta_min) * j / (points - 1);
  grid.back() = theta_max;
  return grid;
}

namespace {

void check_theta_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("effort curve: empty grid");
  if (!(grid.front() > 0.0) || grid.back() > 1.0)
    throw ValidationError("effort curve: grid must lie inside (0, 1]");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1]))
      throw ValidationError("effort curve: grid must be strictly increasing");
}

std::vector<double> prize_gaps(const PrizeVector& v) {
  std::vector<double> gaps(v.n() - 1);
  for (int i = 0; i + 1 < v.n(); ++i) gaps[i] = v[i] - v[i + 1];
  return gaps;
}

// Fills out[i-1] with q_i(t) / F^{-1}(t) for i = 1..n-1; one quantile
// evaluation serves every component.
struct GapIntegrand {
  const Distribution& d;
  int n;
  std::vector<double> coeff;

  explicit GapIntegrand(const Distribution& dist, int players)
      : d(dist), n(players), coeff(players - 1) {
    for (int i = 1; i < n; ++i) coeff[i - 1] = gap_weight_coefficient(n, i);
  }

  void operator()(double t, std::span<double> out) const {
    const double inv_q = 1.0 / d.quantile(t);
    double tp = 1.0;
    for (int i = 1; i < n; ++i) {
      out[i - 1] = coeff[i - 1] * tp * ipow(1.0 - t, n - 1 - i) * inv_q;
      tp *= t;
    }
  }
};

}  // namespace

EquilibriumCurve equilibrium_effort_curve(const Distribution& d,
                                          const PrizeVector& v,
                                          std::span<const double> grid,
                                          double tol) {
  check_theta_grid(grid);
  require_assumption1(d);
  const int n = v.n();
  const std::size_t m = static_cast<std::size_t>(n - 1);
  const std::vector<double> gaps = prize_gaps(v);
  const GapIntegrand integrand(d, n);
  const double panel_tol =
      std::max(tol / static_cast<double>(grid.size()), 1e-13);

  EquilibriumCurve curve;
  curve.thetas.assign(grid.begin(), grid.end());
  curve.efforts.assign(grid.size(), 0.0);
  curve.theta_min = grid.front();

  std::vector<double> tails(m, 0.0);  // component integrals from F(theta_k) to 1
  double upper = 1.0;
  for (std::size_t k = grid.size(); k-- > 0;) {
    const double lower = std::min(d.cdf(curve.thetas[k]), upper);
    const auto panel = integrate_many(
        [&integrand](double t, std::span<double> out) { integrand(t, out); },
        m, lower, upper, panel_tol);
    double g = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      tails[c] += panel[c].value;
      g += gaps[c] * tails[c];
    }
    curve.efforts[k] = g;
    upper = lower;
  }
  return curve;
}

double effort_at(const Distribution& d, const PrizeVector& v, double theta,
                 double tol) {
  if (!(theta > 0.0) || theta > 1.0)
    throw ValidationError("effort_at: theta must lie in (0, 1]");
  require_assumption1(d);
  const int n = v.n();
  const GapIntegrand integrand(d, n);
  const std::vector<double> gaps = prize_gaps(v);
  const auto parts = integrate_many(
      [&integrand](double t, std::span<double> out) { integrand(t, out); },
      static_cast<std::size_t>(n - 1), d.cdf(theta), 1.0, tol);
  double g = 0.0;
  for (int i = 0; i + 1 < n; ++i) g += gaps[i] * parts[i].value;
  return g;
}

double effort_at_direct(const Distribution& d, const PrizeVector& v,
                        double theta, double tol) {
  if (!(theta > 0.0) || theta > 1.0)
    throw ValidationError("effort_at_direct: theta must lie in (0, 1]");
  require_assumption1(d);
  const int n = v.n();
  const auto parts = integrate_many(
      [&d, n](double t, std::span<double> out) {
        const double inv_q = 1.0 / d.quantile(t);
        for (int i = 1; i <= n; ++i)
          out[i - 1] = -rank_probability(n, i, t).p_prime * inv_q;
      },
      static_cast<std::size_t>(n), d.cdf(theta), 1.0, tol);
  double g = 0.0;
  for (int i = 0; i < n; ++i) g += v[i] * parts[i].value;
  return g;
}

double closed_form_lambda_power(double p, int n, int i) {
  check_rank_args(n, i);
  if (!(p > 0.5))
    throw NumericError("closed_form_lambda_power: needs p > 1/2");
  if (i == n) return -(n - 1) / (n - 1.0 / p);
  if (i == 1 && p <= 1.0)
    return (n - 1) * std::exp(log_beta(2.0 - 1.0 / p, n - 1.0));
  // remaining ranks: lambda_i = ((p-1)/p) C(n-1, i-1) Beta(i - 1/p, n-i+1)
  return (p - 1.0) / p * binomial_coefficient(n - 1, i - 1) *
         std::exp(log_beta(i - 1.0 / p, n - i + 1.0));
}

MarginalEffects expected_marginal_effects(const Distribution& d, int n,
                                          LambdaPolicy policy, double tol) {
  if (n < 2) throw ValidationError("expected_marginal_effects: needs n >= 2");
  require_assumption1(d);

  MarginalEffects out;
  out.lambdas.resize(n);
  if (policy == LambdaPolicy::prefer_closed_form &&
      d.family() == Family::power) {
    out.methods.assign(n, LambdaMethod::closed_form);
    for (int i = 1; i <= n; ++i)
      out.lambdas[i - 1] = closed_form_lambda_power(d.shape(), n, i);
    return out;
  }

  out.methods.assign(n, LambdaMethod::quadrature);
  const auto parts = integrate_many(
      [&d, n](double t, std::span<double> out_span) {
        const double h = h_value(d, t);
        for (int i = 1; i <= n; ++i)
          out_span[i - 1] = -rank_probability(n, i, t).p_prime * h;
      },
      static_cast<std::size_t>(n), 0.0, 1.0, tol);
  for (int i = 0; i < n; ++i) out.lambdas[i] = parts[i].value;
  return out;
}

double expected_effort(const MarginalEffects& effects, const PrizeVector& v) {
  if (static_cast<int>(effects.lambdas.size()) != v.n())
    throw ValidationError("expected_effort: prize and lambda lengths differ");
  double s = 0.0;
  for (int i = 0; i < v.n(); ++i) s += effects.lambdas[i] * v[i];
  return s;
}

double expected_effort(const Distribution& d, const PrizeVector& v,
                       double tol) {
  return expected_effort(
      expected_marginal_effects(d, v.n(), LambdaPolicy::prefer_closed_form, tol),
      v);
}

bool majorizes(const PrizeVector& v, const PrizeVector& w) {
  if (v.n() != w.n())
    throw ValidationError("majorizes: vectors must share a length");
  constexpr double kTol = 1e-12;
  double pv = 0.0, pw = 0.0;
  for (int i = 0; i < v.n(); ++i) {
    pv += v[i];
    pw += w[i];
    if (i + 1 < v.n() && pv < pw - kTol) return false;
  }
  return std::abs(pv - pw) <= kTol;
}

ContestComparison compare_contests(const Distribution& d, const PrizeVector& v,
                                   const PrizeVector& w, double tol) {
  if (v.n() != w.n())
    throw ValidationError("compare_contests: vectors must share a length");
  const int n = v.n();
  const MarginalEffects effects =
      expected_marginal_effects(d, n, LambdaPolicy::prefer_closed_form, tol);

  ContestComparison out;
  out.effort_v = expected_effort(effects, v);
  out.effort_w = expected_effort(effects, w);
  out.delta = out.effort_v - out.effort_w;

  // single interior prize change under a monotone density
  int changed = -1;
  bool single_change = true;
  for (int i = 0; i < n && single_change; ++i) {
    if (std::abs(v[i] - w[i]) <= 1e-12) continue;
    if (changed >= 0)
      single_change = false;
    else
      changed = i;
  }
  if (single_change && changed >= 1 && changed <= n - 2) {
    const Monotonicity dm = density_monotonicity(d);
    if (dm != Monotonicity::indeterminate) {
      const int raise = v[changed] > w[changed] ? 1 : -1;
      const bool increasing = dm == Monotonicity::increasing;
      out.tags.push_back(increasing
                             ? "interior-prize-change:density-increasing"
                             : "interior-prize-change:density-decreasing");
      out.predicted_sign = increasing ? raise : -raise;
    }
  }

  // majorization with pinned endpoints under a monotone curvature driver
  if (std::abs(v[0] - w[0]) <= 1e-12 &&
      std::abs(v[n - 1] - w[n - 1]) <= 1e-12) {
    const bool v_major = majorizes(v, w);
    const bool w_major = majorizes(w, v);
    if (v_major != w_major) {
      const Monotonicity driver = curvature_driver_monotonicity(d);
      if (driver != Monotonicity::indeterminate) {
        const bool decreasing = driver == Monotonicity::decreasing;
        out.tags.push_back(decreasing
                               ? "majorization:driver-decreasing"
                               : "majorization:driver-increasing");
        // decreasing driver (h concave): the majorizing schedule earns more
        const int spread_sign = v_major ? 1 : -1;
        out.predicted_sign = decreasing ? spread_sign : -spread_sign;
      }
    }
  }

  if (out.predicted_sign != 0) {
    const double slack =
        1e-9 * std::max({1.0, std::abs(out.effort_v), std::abs(out.effort_w)});
    out.sign_consistent = out.predicted_sign > 0 ? out.delta >= -slack
                                                 : out.delta <= slack;
  }
  return out;
}

}  // namespace contests

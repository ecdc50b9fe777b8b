#include "contests/extensions.hpp"

#include <cmath>
#include <sstream>

#include "contests/errors.hpp"
#include "contests/numerics.hpp"

namespace contests {

BudgetAllocation budget_allocation_power_utility(const Distribution& d, int n,
                                                 double B, double r,
                                                 double tol) {
  if (n < 2) throw ValidationError("budget allocation: needs n >= 2");
  if (!(B > 0.0) || !std::isfinite(B))
    throw ValidationError("budget allocation: B must be positive");
  if (!(r > 0.0) || !(r < 1.0))
    throw ValidationError("budget allocation: r must lie in (0, 1)");

  const MarginalEffects effects =
      expected_marginal_effects(d, n, LambdaPolicy::prefer_closed_form, tol);
  const std::vector<double>& lam = effects.lambdas;

  bool graded = lam[0] > 0.0;
  for (int i = 1; i < n - 1 && graded; ++i)
    graded = lam[i] > 0.0 && lam[i] < lam[i - 1];
  bool winner_take_all = true;
  for (int i = 1; i < n - 1 && winner_take_all; ++i)
    winner_take_all = lam[i] < 0.0;

  BudgetAllocation out{PrizeVector(std::vector<double>(n, 0.0)), r, B, 0.0, {}};
  std::vector<double> prizes(n, 0.0);

  if (n > 2 && graded) {
    const double exponent = 1.0 / (1.0 - r);
    double scale_sum = 1.0;
    out.ratios.reserve(n - 2);
    for (int i = 1; i < n - 1; ++i) {
      const double ratio = std::pow(lam[i] / lam[0], exponent);
      out.ratios.push_back(ratio);
      scale_sum += ratio;
    }
    out.v1 = B / scale_sum;
    prizes[0] = out.v1;
    for (int i = 1; i < n - 1; ++i) prizes[i] = out.ratios[i - 1] * out.v1;
  } else if (n == 2 || winner_take_all) {
    out.v1 = B;
    prizes[0] = B;
  } else {
    std::ostringstream msg;
    msg << "unsupported ordering of expected marginal effects for n = " << n
        << ": interior values must be all positive and decreasing or all "
           "negative";
    throw NumericError(msg.str());
  }

  out.prizes = PrizeVector(std::move(prizes));
  return out;
}

ScreeningReport screening_objective(double p, int n, int k) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("screening: p must be a finite real >= 1");
  if (n < 2) throw ValidationError("screening: needs n >= 2");
  if (k < 1 || k > n - 1)
    throw ValidationError("screening: k must lie in 1..n-1");

  ScreeningReport rep;
  rep.n = n;
  rep.p = p;
  rep.k = k;
  rep.mu = p / (p + 1.0);
  rep.z = std::exp(log_beta(k + 1.0 + 1.0 / p, n - k) - log_beta(k, n - k));
  rep.mu1 = (static_cast<double>(n) / k) * rep.mu * rep.z;
  rep.mu0 = (static_cast<double>(n) / (n - k)) * rep.mu * (1.0 - rep.z);
  const double dev = n * rep.z - k;
  rep.variance = rep.mu * rep.mu * dev * dev / (k * static_cast<double>(n - k));
  rep.denominator = binomial_coefficient(n - 1, k - 1) * (n - k) *
                    std::exp(log_beta(k + 1.0 - 1.0 / p, n - k));
  rep.objective = rep.variance / rep.denominator;
  return rep;
}

ScreeningSweep screening_optimize(double p, int n) {
  ScreeningSweep sweep;
  sweep.table.reserve(n - 1);
  for (int k = 1; k <= n - 1; ++k)
    sweep.table.push_back(screening_objective(p, n, k));
  // objectives within 1e-12 relative count as tied; smaller k wins
  sweep.k_star = 1;
  for (int k = 2; k <= n - 1; ++k) {
    const double best = sweep.table[sweep.k_star - 1].objective;
    if (sweep.table[k - 1].objective > best * (1.0 + 1e-12) ||
        (best == 0.0 && sweep.table[k - 1].objective > 0.0))
      sweep.k_star = k;
  }
  return sweep;
}

}  // namespace contests

#ifndef CONTESTS_EXTENSIONS_HPP
#define CONTESTS_EXTENSIONS_HPP

#include <vector>

#include "contests/contest.hpp"
#include "contests/distribution.hpp"

namespace contests {

struct BudgetAllocation {
  PrizeVector prizes;
  double r = 0.0;       // utility exponent, u(v) = v^r
  double budget = 0.0;  // B
  double v1 = 0.0;      // top prize
  // c_i^{1/(1-r)} for interior ranks i = 2..n-1 (empty in the
  // winner-take-all case)
  std::vector<double> ratios;
};

// Effort-maximizing split of budget B across ranked prizes when agents value
// money through u(v) = v^r, r in (0,1). Two orderings of the expected
// marginal effects are supported:
//   - lambda_1 > ... > lambda_{n-1} > 0: n-1 graded prizes, v_i =
//     (lambda_i/lambda_1)^{1/(1-r)} v_1, v_n = 0, scaled to exhaust B;
//   - all interior lambdas negative: winner-take-all (B, 0, ..., 0).
// Any other ordering raises NumericError("unsupported ordering ...").
BudgetAllocation budget_allocation_power_utility(const Distribution& d, int n,
                                                 double B, double r,
                                                 double tol = 1e-10);

struct ScreeningReport {
  int n = 0;
  double p = 0.0;
  int k = 0;
  double mu = 0.0;   // prior mean of theta
  double mu1 = 0.0;  // posterior mean, prize group
  double mu0 = 0.0;  // posterior mean, no-prize group
  double z = 0.0;
  double variance = 0.0;     // variance of posterior means
  double denominator = 0.0;  // expected-effort normalizer (taken as definition)
  double objective = 0.0;    // variance / denominator
};

// Information revealed per unit of expected effort by awarding k identical
// prizes among n agents with ability law F = theta^p, p >= 1:
//   mu = p/(p+1), z = beta(k+1+1/p, n-k)/beta(k, n-k),
//   mu1 = (n/k) mu z, mu0 = (n/(n-k)) mu (1-z),
//   variance = mu^2 (nz-k)^2 / (k(n-k)),
//   denominator = C(n-1,k-1)(n-k) beta(k+1-1/p, n-k).
ScreeningReport screening_objective(double p, int n, int k);

struct ScreeningSweep {
  int k_star = 0;
  std::vector<ScreeningReport> table;  // k = 1..n-1 in order
};

// Scans k = 1..n-1 for the objective maximizer; ties resolve toward the
// smaller k.
ScreeningSweep screening_optimize(double p, int n);

}  // namespace contests

#endif

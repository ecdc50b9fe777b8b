#ifndef CONTESTS_VERIFY_HPP
#define CONTESTS_VERIFY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "contests/contest.hpp"
#include "contests/distribution.hpp"

namespace contests {

struct RegretReport {
  double max_regret = 0.0;
  double worst_type = 0.0;       // theta attaining max_regret
  double worst_deviation = 0.0;  // best deviation for that theta
  int type_grid_points = 0;
  int deviation_grid_points = 0;
};

// Measures how far the computed equilibrium is from a best response. For
// each theta in type_grid the payoff of mimicking type t,
//   payoff(t; theta) = sum_i v_i p_i(F(t)) - theta g(t),
// is maximized over deviation_grid plus the truthful point; regret is that
// maximum minus the truthful payoff, so it is nonnegative by construction.
// Also asserts g is strictly decreasing across both grids whenever the prize
// vector is not constant.
RegretReport best_response_regret(const Distribution& d, const PrizeVector& v,
                                  std::span<const double> type_grid,
                                  std::span<const double> deviation_grid,
                                  double tol = 1e-10);

struct RankFrequencies {
  std::vector<std::int64_t> counts;  // per rank, best first
  std::vector<double> empirical;     // counts / samples
  std::vector<double> analytic;      // p_i(F(theta))
  std::int64_t samples = 0;
};

// Simulates rank outcomes for a type-theta agent against n-1 opponents drawn
// i.i.d. from d (lower cost ranks better; exact ties broken by coin flip).
// Work is split over 64 shards with seeds derived from `seed`, merged in
// shard order, so results are reproducible.
RankFrequencies monte_carlo_ranks(const Distribution& d, int n, double theta,
                                  std::int64_t samples, std::uint64_t seed);

struct ChiSquare {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  int bins = 0;  // after merging low-expectation bins
};

// Pearson statistic of observed counts against model probabilities. Adjacent
// ranks are pooled left to right until each bin's expected count reaches 5;
// a deficient tail joins the last bin.
ChiSquare chi_square_statistic(std::span<const std::int64_t> counts,
                               std::span<const double> probabilities);

// Quantile of the chi-square law with df degrees of freedom.
double chi_square_quantile(int df, double q);

}  // namespace contests

#endif

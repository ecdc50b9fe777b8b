#include "contests/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "contests/errors.hpp"
#include "contests/numerics.hpp"

namespace contests {

namespace {

std::vector<double> merge_grids(std::span<const double> a,
                                std::span<const double> b) {
  std::vector<double> merged(a.begin(), a.end());
  merged.insert(merged.end(), b.begin(), b.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

std::size_t grid_index(const std::vector<double>& merged, double x) {
  const auto it = std::lower_bound(merged.begin(), merged.end(), x);
  return static_cast<std::size_t>(it - merged.begin());
}

}  // namespace

RegretReport best_response_regret(const Distribution& d, const PrizeVector& v,
                                  std::span<const double> type_grid,
                                  std::span<const double> deviation_grid,
                                  double tol) {
  if (type_grid.empty() || deviation_grid.empty())
    throw ValidationError("best_response_regret: grids must be nonempty");
  const std::vector<double> merged = merge_grids(type_grid, deviation_grid);
  if (merged.front() <= 0.0 || merged.back() > 1.0)
    throw ValidationError("best_response_regret: grid points must lie in (0, 1]");

  const EquilibriumCurve curve = equilibrium_effort_curve(d, v, merged, tol);
  const int n = v.n();
  const double spread = v[0] - v[n - 1];

  if (spread > 0.0) {
    const double slack = 1e-12 * std::max(1.0, std::abs(curve.efforts.front()));
    for (std::size_t i = 1; i < merged.size(); ++i)
      if (curve.efforts[i] > curve.efforts[i - 1] - slack) {
        std::ostringstream msg;
        msg << "equilibrium effort is not strictly decreasing near theta = "
            << merged[i];
        throw NumericError(msg.str());
      }
  }

  // prize side of the payoff, independent of the deviator's type; gap form
  // sum_i (v_i - v_{i+1}) P(rank <= i) + v_n keeps it exactly constant for
  // flat schedules instead of wobbling in the last ulp
  std::vector<double> prize_part(merged.size());
  for (std::size_t j = 0; j < merged.size(); ++j) {
    const double t = d.cdf(merged[j]);
    double sum = v[n - 1];
    double cumulative = 0.0;
    for (int i = 1; i < n; ++i) {
      cumulative += rank_probability(n, i, t).p;
      sum += (v[i - 1] - v[i]) * cumulative;
    }
    prize_part[j] = sum;
  }

  RegretReport report;
  report.type_grid_points = static_cast<int>(type_grid.size());
  report.deviation_grid_points = static_cast<int>(deviation_grid.size());
  report.worst_type = type_grid[0];
  report.worst_deviation = type_grid[0];

  for (const double theta : type_grid) {
    const std::size_t self = grid_index(merged, theta);
    const double truthful = prize_part[self] - theta * curve.efforts[self];
    double best = truthful;
    double best_at = theta;
    for (const double t : deviation_grid) {
      const std::size_t j = grid_index(merged, t);
      const double payoff = prize_part[j] - theta * curve.efforts[j];
      if (payoff > best) {
        best = payoff;
        best_at = t;
      }
    }
    const double regret = best - truthful;
    if (regret > report.max_regret) {
      report.max_regret = regret;
      report.worst_type = theta;
      report.worst_deviation = best_at;
    }
  }
  return report;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RankFrequencies monte_carlo_ranks(const Distribution& d, int n, double theta,
                                  std::int64_t samples, std::uint64_t seed) {
  if (n < 2) throw ValidationError("monte_carlo_ranks: needs n >= 2");
  if (theta <= 0.0 || theta > 1.0)
    throw ValidationError("monte_carlo_ranks: theta must lie in (0, 1]");
  if (samples < 10000)
    throw ValidationError("monte_carlo_ranks: needs at least 1e4 samples");

  RankFrequencies out;
  out.samples = samples;
  out.counts.assign(n, 0);

  constexpr int kShards = 64;
  const std::int64_t base = samples / kShards;
  const std::int64_t rem = samples % kShards;
  for (int s = 0; s < kShards; ++s) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ull * (s + 1))));
    const std::int64_t quota = base + (s < rem ? 1 : 0);
    for (std::int64_t it = 0; it < quota; ++it) {
      int better = 0;
      for (int j = 0; j < n - 1; ++j) {
        const double rival = d.quantile(uniform01(rng));
        if (rival < theta)
          ++better;
        else if (rival == theta && uniform01(rng) < 0.5)
          ++better;
      }
      ++out.counts[better];
    }
  }

  out.empirical.resize(n);
  out.analytic.resize(n);
  const double t = d.cdf(theta);
  for (int i = 1; i <= n; ++i) {
    out.empirical[i - 1] =
        static_cast<double>(out.counts[i - 1]) / static_cast<double>(samples);
    out.analytic[i - 1] = rank_probability(n, i, t).p;
  }
  return out;
}

ChiSquare chi_square_statistic(std::span<const std::int64_t> counts,
                               std::span<const double> probabilities) {
  if (counts.size() != probabilities.size() || counts.size() < 2)
    throw ValidationError("chi_square_statistic: need >= 2 matching bins");
  std::int64_t total = 0;
  for (const auto c : counts) total += c;
  if (total <= 0) throw ValidationError("chi_square_statistic: empty sample");

  // pool ranks until each bin expects at least 5 observations
  std::vector<double> observed, expected;
  double obs_acc = 0.0, exp_acc = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    obs_acc += static_cast<double>(counts[i]);
    exp_acc += probabilities[i] * static_cast<double>(total);
    if (exp_acc >= 5.0) {
      observed.push_back(obs_acc);
      expected.push_back(exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (expected.empty())
      throw NumericError("chi_square_statistic: expected counts too small");
    observed.back() += obs_acc;
    expected.back() += exp_acc;
  }
  if (expected.size() < 2)
    throw NumericError("chi_square_statistic: pooling left a single bin");

  ChiSquare out;
  out.bins = static_cast<int>(expected.size());
  out.degrees_of_freedom = out.bins - 1;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    out.statistic += diff * diff / expected[i];
  }
  return out;
}

double chi_square_quantile(int df, double q) {
  if (df < 1) throw ValidationError("chi_square_quantile: df must be >= 1");
  if (!(q > 0.0) || !(q < 1.0))
    throw ValidationError("chi_square_quantile: q must lie in (0, 1)");
  const double a = 0.5 * df;
  double hi = 2.0 * (df + 10.0);
  while (gamma_p(a, 0.5 * hi) < q) hi *= 2.0;
  return invert_monotone([a](double x) { return gamma_p(a, 0.5 * x); }, q, 0.0,
                         hi, 1e-12);
}

}  // namespace contests

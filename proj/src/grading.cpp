#include "contests/grading.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "contests/numerics.hpp"

namespace contests {

GradingContest::GradingContest(std::vector<int> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty()) throw ValidationError("GradingContest: empty cut sequence");
  if (cuts_.front() < 1)
    throw ValidationError("GradingContest: cuts must be positive");
  for (std::size_t i = 1; i < cuts_.size(); ++i)
    if (cuts_[i] <= cuts_[i - 1])
      throw ValidationError("GradingContest: cuts must be strictly increasing");
  if (cuts_.back() < 2)
    throw ValidationError("GradingContest: needs n >= 2 contestants");
}

std::string GradingContest::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < cuts_.size(); ++i)
    out << (i ? "," : "") << cuts_[i];
  return out.str();
}

WageSpec WageSpec::inverse_ability() {
  WageSpec w;
  w.kind_ = Kind::inverse_ability;
  return w;
}

WageSpec WageSpec::linear() {
  WageSpec w;
  w.kind_ = Kind::linear;
  return w;
}

WageSpec WageSpec::tabulated(std::vector<double> thetas,
                             std::vector<double> wages) {
  if (thetas.size() != wages.size() || thetas.size() < 2)
    throw ValidationError("tabulated wage: need >= 2 matching rows");
  if (thetas.front() != 0.0 || thetas.back() != 1.0)
    throw ValidationError("tabulated wage: abscissae must cover [0, 1]");
  WageSpec w;
  w.kind_ = Kind::tabulated;
  w.table_ =
      std::make_shared<const MonotoneCubic>(std::move(thetas), std::move(wages));
  // monotone nonincreasing on the probe grid
  double prev = w(1.0 / 513.0);
  for (int k = 1; k < 512; ++k) {
    const double v = w(static_cast<double>(k + 1) / 513.0);
    if (v > prev + 1e-12)
      throw ValidationError("tabulated wage: must be nonincreasing");
    prev = v;
  }
  return w;
}

WageSpec WageSpec::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("tabulated wage: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("tabulated wage: empty file " + path);
  std::vector<double> x, y;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double a, b;
    if (!(row >> a >> b)) {
      std::ostringstream msg;
      msg << "tabulated wage: bad row at " << path << ":" << line_no;
      throw ValidationError(msg.str());
    }
    x.push_back(a);
    y.push_back(b);
  }
  return tabulated(std::move(x), std::move(y));
}

double WageSpec::operator()(double theta) const {
  switch (kind_) {
    case Kind::inverse_ability:
      if (theta <= 0.0)
        throw NumericError("wage: 1/theta undefined at theta = 0");
      return 1.0 / theta;
    case Kind::linear:
      return 1.0 - theta;
    case Kind::tabulated:
      return table_->value(theta);
  }
  return 0.0;
}

std::string WageSpec::describe() const {
  switch (kind_) {
    case Kind::inverse_ability:
      return "inverse";
    case Kind::linear:
      return "linear";
    case Kind::tabulated:
      return "tabulated";
  }
  return "";
}

namespace {

// w(theta) f(theta) computed so that 1/theta wages stay finite where the
// product itself is finite (dividing the density avoids the 1/theta overflow
// at subnormal quadrature nodes)
double wage_density(const Distribution& d, const WageSpec& w, double theta) {
  if (w.kind() == WageSpec::Kind::inverse_ability)
    return d.pdf(theta) / theta;
  return w(theta) * d.pdf(theta);
}

double wage_moment_integrand(const Distribution& d, const WageSpec& w,
                             double theta, int n, int k) {
  const double F = d.cdf(theta);
  double r = wage_density(d, w, theta);
  for (int j = 0; j < k - 1; ++j) r *= F;
  for (int j = 0; j < n - k; ++j) r *= 1.0 - F;
  return r;
}

void check_wage_integrable(const Distribution& d, const WageSpec& w, int n,
                           double tol) {
  if (w.kind() != WageSpec::Kind::inverse_ability) return;  // bounded wages
  switch (d.family()) {
    case Family::power:
      // rank-k integrand ~ theta^{pk - 2} near 0: rank 1 needs p > 1
      if (d.shape() <= 1.0)
        throw NumericError(
            "order_statistic_wages: E[w] diverges at rank 1 for w = 1/theta "
            "unless the power shape exceeds 1");
      return;
    case Family::reflected_power:
      // F ~ p theta near 0, so the rank-1 integrand behaves like 1/theta
      throw NumericError(
          "order_statistic_wages: E[w] diverges at rank 1 for w = 1/theta "
          "under a reflected_power law");
    case Family::tabulated: {
      // shrinking-cutoff probe on the worst rank (k = 1)
      const double probe_tol = std::max(tol, 1e-8);
      double prev = 0.0, prev_inc = 0.0;
      for (int j = 1; j <= 4; ++j) {
        const double eps = std::pow(10.0, -2.0 * j);
        const double cur =
            integrate(
                [&](double x) { return wage_moment_integrand(d, w, x, n, 1); },
                eps, 1.0, probe_tol)
                .value;
        const double inc = std::abs(cur - prev);
        if (j >= 3 && inc > 0.5 * prev_inc + 1e-8)
          throw NumericError(
              "order_statistic_wages: rank-1 wage integral shows no sign of "
              "converging near theta = 0");
        prev = cur;
        prev_inc = inc;
      }
      return;
    }
  }
}

}  // namespace

OrderStatWages order_statistic_wages(const Distribution& d, const WageSpec& w,
                                     int n, double tol) {
  if (n < 2) throw ValidationError("order_statistic_wages: needs n >= 2");
  check_wage_integrable(d, w, n, tol);

  const auto parts = integrate_many(
      [&](double theta, std::span<double> out) {
        const double F = d.cdf(theta);
        const double base = wage_density(d, w, theta);
        // F^{k-1} (1-F)^{n-k} built incrementally across ranks
        double low = 1.0;
        std::vector<double> high(n);
        high[n - 1] = 1.0;
        for (int k = n - 2; k >= 0; --k) high[k] = high[k + 1] * (1.0 - F);
        for (int k = 1; k <= n; ++k) {
          out[k - 1] = base * low * high[k - 1];
          low *= F;
        }
      },
      static_cast<std::size_t>(n), 0.0, 1.0, tol);

  OrderStatWages wages;
  wages.vstar.resize(n);
  for (int k = 1; k <= n; ++k)
    wages.vstar[k - 1] = n * binomial_coefficient(n - 1, k - 1) * parts[k - 1].value;
  for (int k = 1; k < n; ++k)
    if (!(wages.vstar[k - 1] > wages.vstar[k]))
      throw NumericError(
          "order_statistic_wages: expected wages are not strictly decreasing "
          "(wage profile may be flat)");
  return wages;
}

PrizeVector induced_prize_vector(const GradingContest& g,
                                 const OrderStatWages& wages) {
  if (g.n() != static_cast<int>(wages.vstar.size()))
    throw ValidationError("induced_prize_vector: contest and wages disagree on n");
  std::vector<double> prizes(wages.vstar.size());
  int start = 0;
  for (int cut : g.cuts()) {
    double sum = 0.0;
    for (int r = start; r < cut; ++r) sum += wages.vstar[r];
    const double avg = sum / (cut - start);
    for (int r = start; r < cut; ++r) prizes[r] = avg;
    start = cut;
  }
  return PrizeVector(std::move(prizes));
}

bool refines(const GradingContest& g, const GradingContest& h) {
  if (g.n() != h.n())
    throw ValidationError("refines: contests must share n");
  // h's cuts must be a subsequence of g's; both are sorted
  std::size_t gi = 0;
  for (int cut : h.cuts()) {
    while (gi < g.cuts().size() && g.cuts()[gi] < cut) ++gi;
    if (gi == g.cuts().size() || g.cuts()[gi] != cut) return false;
  }
  return true;
}

std::vector<GradingContest> enumerate_gradings(int n) {
  if (n < 2 || n > 20)
    throw ValidationError("enumerate_gradings: n must lie in 2..20");
  std::vector<GradingContest> all;
  const unsigned long top = 1ul << (n - 1);
  all.reserve(top);
  for (unsigned long mask = 0; mask < top; ++mask) {
    std::vector<int> cuts;
    for (int b = 0; b < n - 1; ++b)
      if (mask & (1ul << b)) cuts.push_back(b + 1);
    cuts.push_back(n);
    all.emplace_back(std::move(cuts));
  }
  return all;
}

namespace {

std::vector<GradingContest> structured_candidates(const HClassification& cls,
                                                  int n, bool& fell_back) {
  fell_back = false;
  auto make = [n](std::set<int> cut_set) {
    cut_set.insert(n);
    return GradingContest(std::vector<int>(cut_set.begin(), cut_set.end()));
  };

  std::vector<GradingContest> out;
  if (cls.monotonicity == Monotonicity::increasing &&
      cls.curvature == Curvature::concave) {
    std::set<int> all;
    for (int k = 1; k <= n; ++k) all.insert(k);
    out.push_back(make(all));
  } else if (cls.monotonicity == Monotonicity::increasing &&
             cls.curvature == Curvature::convex) {
    out.push_back(make({1, n - 1}));
  } else if (cls.monotonicity == Monotonicity::decreasing &&
             cls.curvature == Curvature::concave) {
    for (int k = 1; k < n; ++k) {
      std::set<int> cuts;
      for (int j = 1; j <= k; ++j) cuts.insert(j);
      out.push_back(make(std::move(cuts)));
    }
  } else if (cls.monotonicity == Monotonicity::decreasing &&
             cls.curvature == Curvature::convex) {
    for (int k = 1; k < n; ++k) out.push_back(make({1, k}));
  } else {
    fell_back = true;
    return enumerate_gradings(n);
  }
  // candidate families can collapse for small n; drop duplicates
  std::vector<GradingContest> unique;
  for (auto& g : out)
    if (std::find(unique.begin(), unique.end(), g) == unique.end())
      unique.push_back(std::move(g));
  return unique;
}

bool cuts_less(const GradingContest& a, const GradingContest& b) {
  if (a.grades() != b.grades()) return a.grades() < b.grades();
  return a.cuts() < b.cuts();
}

}  // namespace

GradingSearchResult optimize_grading(const Distribution& d, const WageSpec& w,
                                     int n, SearchMode mode, double tol) {
  const OrderStatWages wages = order_statistic_wages(d, w, n, tol);
  const MarginalEffects effects =
      expected_marginal_effects(d, n, LambdaPolicy::prefer_closed_form, tol);

  bool fell_back = false;
  std::vector<GradingContest> candidates =
      (mode == SearchMode::bruteforce)
          ? enumerate_gradings(n)
          : structured_candidates(classify_h(d), n, fell_back);

  GradingSearchResult result{GradingContest({n}), 0.0, {}, mode, fell_back};
  result.ranking.reserve(candidates.size());
  for (auto& g : candidates) {
    const double effort = expected_effort(effects, induced_prize_vector(g, wages));
    result.ranking.emplace_back(std::move(g), effort);
  }
  std::sort(result.ranking.begin(), result.ranking.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return cuts_less(a.first, b.first);
            });

  // efforts within 1e-9 relative count as tied; each tie group is reordered
  // toward fewer grades, then lexicographically smaller cuts
  for (std::size_t i = 0; i < result.ranking.size();) {
    const double head = result.ranking[i].second;
    const double band = std::max(1e-9 * std::abs(head), 1e-12);
    std::size_t j = i + 1;
    while (j < result.ranking.size() && head - result.ranking[j].second <= band)
      ++j;
    std::sort(result.ranking.begin() + i, result.ranking.begin() + j,
              [](const auto& a, const auto& b) {
                return cuts_less(a.first, b.first);
              });
    i = j;
  }
  result.best = result.ranking.front().first;
  result.best_effort = result.ranking.front().second;
  return result;
}

}  // namespace contests

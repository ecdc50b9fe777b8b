#ifndef CONTESTS_GRADING_HPP
#define CONTESTS_GRADING_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "contests/contest.hpp"
#include "contests/distribution.hpp"

namespace contests {

// A grading contest pools consecutive ranks into grades. It is stored as the
// strictly increasing cumulative cut sequence (n_1, ..., n_m) with n_m = n:
// grade j covers ranks n_{j-1}+1 .. n_j. (1, 2, ..., n) is fully
// rank-revealing; (n) pools everyone.
class GradingContest {
 public:
  explicit GradingContest(std::vector<int> cuts);

  const std::vector<int>& cuts() const { return cuts_; }
  int n() const { return cuts_.back(); }
  int grades() const { return static_cast<int>(cuts_.size()); }
  std::string to_string() const;  // "1,2,3"

  bool operator==(const GradingContest& other) const = default;

 private:
  std::vector<int> cuts_;
};

// Wage profile w(theta), monotone nonincreasing in ability cost.
class WageSpec {
 public:
  enum class Kind { inverse_ability, linear, tabulated };

  static WageSpec inverse_ability();  // w = 1/theta (productivity wage)
  static WageSpec linear();           // w = 1 - theta
  static WageSpec tabulated(std::vector<double> thetas,
                            std::vector<double> wages);
  static WageSpec tabulated_from_file(const std::string& path);

  double operator()(double theta) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  WageSpec() = default;
  Kind kind_ = Kind::linear;
  std::shared_ptr<const MonotoneCubic> table_;
};

struct OrderStatWages {
  std::vector<double> vstar;  // strictly decreasing in rank
};

// Expected wage of the rank-i order statistic among n draws:
//   v*_i = n C(n-1, i-1) Integral_0^1 w(x) F(x)^{i-1} (1-F(x))^{n-i} f(x) dx.
// Integrability at theta = 0 is pre-checked analytically for the closed-form
// families (w = 1/theta needs F = theta^p with p > 1) and with a shrinking
// lower-cutoff probe otherwise.
OrderStatWages order_statistic_wages(const Distribution& d, const WageSpec& w,
                                     int n, double tol = 1e-10);

// Grade values induced by pooling: each rank receives its grade's block
// average of vstar.
PrizeVector induced_prize_vector(const GradingContest& g,
                                 const OrderStatWages& wages);

// True when g refines h: h's cuts are a subsequence of g's (same n).
bool refines(const GradingContest& g, const GradingContest& h);

// All 2^{n-1} grading contests, ordered by the bitmask of interior cut
// points {1..n-1} counted from zero: (n), (1,n), (2,n), (1,2,n), ...
std::vector<GradingContest> enumerate_gradings(int n);

enum class SearchMode { bruteforce, structured };

struct GradingSearchResult {
  GradingContest best;
  double best_effort = 0.0;
  // every candidate with its expected effort, best first
  std::vector<std::pair<GradingContest, double>> ranking;
  SearchMode mode = SearchMode::bruteforce;
  bool fell_back_to_bruteforce = false;  // structured mode, indeterminate shape
};

// Maximizes expected equilibrium effort over grading contests. Bruteforce
// scans the full enumeration; structured mode scans only the candidate
// family the shape of h admits:
//   increasing+concave -> (1, 2, ..., n)
//   increasing+convex  -> (1, n-1, n)
//   decreasing+concave -> (1, 2, ..., k, n)
//   decreasing+convex  -> (1, k, n)
// falling back to the full scan when the shape is indeterminate. Efforts
// within 1e-9 relative count as tied; ties prefer fewer grades, then the
// lexicographically smallest cut sequence.
GradingSearchResult optimize_grading(const Distribution& d, const WageSpec& w,
                                     int n, SearchMode mode,
                                     double tol = 1e-10);

}  // namespace contests

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "contests/errors.hpp"
#include "contests/grading.hpp"

using namespace contests;

namespace {

Distribution smoothstep_distribution() {
  std::vector<double> t, f;
  for (int i = 0; i <= 32; ++i) {
    double x = i / 32.0;
    t.push_back(x);
    f.push_back(x * x * (3.0 - 2.0 * x));
  }
  return Distribution::tabulated(t, f);
}

}  // namespace

TEST_CASE("grading contests store validated cut sequences") {
  GradingContest g({1, 2, 3});
  CHECK(g.n() == 3);
  CHECK(g.grades() == 3);
  CHECK(g.to_string() == "1,2,3");

  GradingContest pooled({4});
  CHECK(pooled.grades() == 1);
  CHECK(pooled.n() == 4);

  CHECK_THROWS_AS(GradingContest({}), ValidationError);
  CHECK_THROWS_AS(GradingContest({0, 3}), ValidationError);
  CHECK_THROWS_AS(GradingContest({2, 2, 3}), ValidationError);
  CHECK_THROWS_AS(GradingContest({3, 1}), ValidationError);
  CHECK_THROWS_AS(GradingContest({1}), ValidationError);
}

TEST_CASE("grading enumeration is the interior-cut bitmask order") {
  auto g2 = enumerate_gradings(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0].cuts() == std::vector<int>{2});
  CHECK(g2[1].cuts() == std::vector<int>{1, 2});

  auto g3 = enumerate_gradings(3);
  REQUIRE(g3.size() == 4);
  CHECK(g3[0].cuts() == std::vector<int>{3});
  CHECK(g3[1].cuts() == std::vector<int>{1, 3});
  CHECK(g3[2].cuts() == std::vector<int>{2, 3});
  CHECK(g3[3].cuts() == std::vector<int>{1, 2, 3});

  CHECK(enumerate_gradings(4).size() == 8);
  CHECK(enumerate_gradings(6).size() == 32);

  CHECK_THROWS_AS(enumerate_gradings(1), ValidationError);
  CHECK_THROWS_AS(enumerate_gradings(21), ValidationError);
}

TEST_CASE("refinement is the subsequence order on cuts") {
  GradingContest full({1, 2, 3});
  GradingContest top({1, 3});
  GradingContest bottom({2, 3});
  GradingContest pooled({3});

  CHECK(refines(full, top));
  CHECK(refines(full, bottom));
  CHECK(refines(full, pooled));
  CHECK(refines(top, pooled));
  CHECK(refines(full, full));
  CHECK_FALSE(refines(top, bottom));
  CHECK_FALSE(refines(bottom, top));
  CHECK_FALSE(refines(top, full));

  GradingContest other({1, 2, 3, 4});
  CHECK_THROWS_AS(refines(full, other), ValidationError);
}

TEST_CASE("wage profiles evaluate their kind") {
  auto inv = WageSpec::inverse_ability();
  CHECK(inv(0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(inv(0.25) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(inv(0.0), NumericError);
  CHECK(inv.kind() == WageSpec::Kind::inverse_ability);

  auto lin = WageSpec::linear();
  CHECK(lin(0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(lin(1.0) == 0.0);
  CHECK(lin.kind() == WageSpec::Kind::linear);

  auto tab = WageSpec::tabulated({0.0, 0.5, 1.0}, {3.0, 1.0, 0.5});
  CHECK(tab(0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(tab(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tab(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tab(0.25) <= 3.0);
  CHECK(tab(0.25) >= 1.0);

  // wages may not rise with marginal cost
  CHECK_THROWS_AS(WageSpec::tabulated({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0}),
                  ValidationError);
  CHECK_THROWS_AS(WageSpec::tabulated({0.2, 1.0}, {1.0, 0.5}),
                  ValidationError);
  CHECK_THROWS_AS(WageSpec::tabulated({0.0}, {1.0}), ValidationError);
}

TEST_CASE("wage tables round-trip through files") {
  std::string path = "test_wage_table.tsv";
  {
    std::ofstream out(path);
    out << "theta\twage\n0\t3\n0.5\t1\n1\t0.5\n";
  }
  auto w = WageSpec::tabulated_from_file(path);
  CHECK(w(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  std::remove(path.c_str());

  CHECK_THROWS_AS(WageSpec::tabulated_from_file("missing_wages.tsv"),
                  ValidationError);
}

TEST_CASE("order-statistic wages match closed forms for 1/theta") {
  // F = theta^2, n = 3: v* = (3.2, 1.6, 1.2)
  auto w3 = order_statistic_wages(Distribution::power(2.0),
                                  WageSpec::inverse_ability(), 3);
  REQUIRE(w3.vstar.size() == 3);
  CHECK(w3.vstar[0] == doctest::Approx(3.2).epsilon(1e-10));
  CHECK(w3.vstar[1] == doctest::Approx(1.6).epsilon(1e-10));
  CHECK(w3.vstar[2] == doctest::Approx(1.2).epsilon(1e-10));

  // F = theta^1.5, n = 4: (243/35, 81/35, 54/35, 6/5)
  auto w4 = order_statistic_wages(Distribution::power(1.5),
                                  WageSpec::inverse_ability(), 4);
  CHECK(w4.vstar[0] == doctest::Approx(243.0 / 35.0).epsilon(1e-10));
  CHECK(w4.vstar[1] == doctest::Approx(81.0 / 35.0).epsilon(1e-10));
  CHECK(w4.vstar[2] == doctest::Approx(54.0 / 35.0).epsilon(1e-10));
  CHECK(w4.vstar[3] == doctest::Approx(1.2).epsilon(1e-10));
}

TEST_CASE("order-statistic wages match closed forms for linear wages") {
  // F = theta^2, n = 3, w = 1 - theta: (19/35, 11/35, 5/35)
  auto w3 = order_statistic_wages(Distribution::power(2.0), WageSpec::linear(), 3);
  CHECK(w3.vstar[0] == doctest::Approx(19.0 / 35.0).epsilon(1e-10));
  CHECK(w3.vstar[1] == doctest::Approx(11.0 / 35.0).epsilon(1e-10));
  CHECK(w3.vstar[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-10));

  // uniform, n = 2: order statistics of 1 - theta have means 2/3 and 1/3
  auto w2 = order_statistic_wages(Distribution::power(1.0), WageSpec::linear(), 2);
  CHECK(w2.vstar[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(w2.vstar[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("adjacent wage ratios obey the power-family identity") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (int n : {3, 5, 8}) {
      auto w = order_statistic_wages(Distribution::power(p),
                                     WageSpec::inverse_ability(), n);
      for (int k = 2; k <= n; ++k) {
        double expect = (p * k - p - 1.0) / (p * (k - 1.0));
        CHECK(w.vstar[k - 1] / w.vstar[k - 2] ==
              doctest::Approx(expect).epsilon(1e-8));
      }
      for (int k = 1; k < n; ++k) CHECK(w.vstar[k] < w.vstar[k - 1]);
    }
  }
}

TEST_CASE("diverging wage moments are rejected with the failing rank") {
  CHECK_THROWS_WITH_AS(
      order_statistic_wages(Distribution::power(1.0),
                            WageSpec::inverse_ability(), 3),
      doctest::Contains("rank 1"), NumericError);
  CHECK_THROWS_AS(order_statistic_wages(Distribution::power(0.6),
                                        WageSpec::inverse_ability(), 3),
                  NumericError);
  CHECK_THROWS_WITH_AS(
      order_statistic_wages(Distribution::reflected_power(2.0),
                            WageSpec::inverse_ability(), 4),
      doctest::Contains("rank 1"), NumericError);
}

TEST_CASE("pooling ranks averages their rank-revealing values") {
  OrderStatWages wages{{3.2, 1.6, 1.2}};

  auto full = induced_prize_vector(GradingContest({1, 2, 3}), wages);
  CHECK(full.values() == std::vector<double>{3.2, 1.6, 1.2});

  auto top = induced_prize_vector(GradingContest({1, 3}), wages);
  CHECK(top[0] == doctest::Approx(3.2).epsilon(1e-15));
  CHECK(top[1] == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(top[2] == doctest::Approx(1.4).epsilon(1e-15));

  auto bottom = induced_prize_vector(GradingContest({2, 3}), wages);
  CHECK(bottom[0] == doctest::Approx(2.4).epsilon(1e-15));
  CHECK(bottom[1] == doctest::Approx(2.4).epsilon(1e-15));
  CHECK(bottom[2] == doctest::Approx(1.2).epsilon(1e-15));

  auto pooled = induced_prize_vector(GradingContest({3}), wages);
  for (int i = 0; i < 3; ++i)
    CHECK(pooled[i] == doctest::Approx(2.0).epsilon(1e-15));

  // pooling never changes the average wage
  for (const auto& g : enumerate_gradings(3)) {
    auto v = induced_prize_vector(g, wages);
    CHECK(v.total() == doctest::Approx(6.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(induced_prize_vector(GradingContest({1, 4}), wages),
                  ValidationError);
}

TEST_CASE("bruteforce grading search ranks every contest") {
  auto res = optimize_grading(Distribution::power(2.0),
                              WageSpec::inverse_ability(), 3,
                              SearchMode::bruteforce);
  CHECK(res.mode == SearchMode::bruteforce);
  CHECK_FALSE(res.fell_back_to_bruteforce);
  CHECK(res.best.cuts() == std::vector<int>{1, 2, 3});
  CHECK(res.best_effort == doctest::Approx(17.6 / 15.0).epsilon(1e-10));

  REQUIRE(res.ranking.size() == 4);
  CHECK(res.ranking[0].first.cuts() == std::vector<int>{1, 2, 3});
  // runner-ups tie exactly; the lexicographically smaller cuts come first
  CHECK(res.ranking[1].first.cuts() == std::vector<int>{1, 3});
  CHECK(res.ranking[2].first.cuts() == std::vector<int>{2, 3});
  CHECK(res.ranking[1].second == doctest::Approx(0.96).epsilon(1e-10));
  CHECK(res.ranking[2].second == doctest::Approx(0.96).epsilon(1e-10));
  CHECK(res.ranking[3].first.cuts() == std::vector<int>{3});
  CHECK(res.ranking[3].second == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("structured search scans only the admissible family") {
  // increasing + concave: full revelation is the single candidate
  auto inc_conc = optimize_grading(Distribution::power(2.0),
                                   WageSpec::inverse_ability(), 4,
                                   SearchMode::structured);
  CHECK(inc_conc.mode == SearchMode::structured);
  CHECK_FALSE(inc_conc.fell_back_to_bruteforce);
  CHECK(inc_conc.ranking.size() == 1);
  CHECK(inc_conc.best.cuts() == std::vector<int>{1, 2, 3, 4});

  // increasing + convex: (1, n-1, n)
  auto inc_conv = optimize_grading(Distribution::reflected_power(0.5),
                                   WageSpec::linear(), 4,
                                   SearchMode::structured);
  CHECK(inc_conv.ranking.size() == 1);
  CHECK(inc_conv.best.cuts() == std::vector<int>{1, 3, 4});

  // decreasing + concave: leaderboards with cutoff (1,2,...,k,n)
  auto dec_conc = optimize_grading(Distribution::reflected_power(2.0),
                                   WageSpec::linear(), 5,
                                   SearchMode::structured);
  CHECK(dec_conc.ranking.size() >= 2);

  // decreasing + convex: (1,k,n)
  auto dec_conv = optimize_grading(Distribution::power(0.6),
                                   WageSpec::linear(), 5,
                                   SearchMode::structured);
  CHECK(dec_conv.ranking.size() >= 2);
  for (const auto& [g, effort] : dec_conv.ranking)
    CHECK(g.grades() <= 3);

  // structured and bruteforce agree on the winner
  for (const Distribution& d :
       {Distribution::power(2.0), Distribution::power(0.6),
        Distribution::reflected_power(0.5), Distribution::reflected_power(2.0)}) {
    auto brute = optimize_grading(d, WageSpec::linear(), 5, SearchMode::bruteforce);
    auto fast = optimize_grading(d, WageSpec::linear(), 5, SearchMode::structured);
    CHECK(fast.best_effort == doctest::Approx(brute.best_effort).epsilon(1e-9));
    CHECK(fast.best.cuts() == brute.best.cuts());
  }
}

TEST_CASE("indeterminate shapes fall back to the full scan") {
  auto d = smoothstep_distribution();
  auto res = optimize_grading(d, WageSpec::linear(), 3, SearchMode::structured,
                              1e-8);
  CHECK(res.mode == SearchMode::structured);
  CHECK(res.fell_back_to_bruteforce);
  CHECK(res.ranking.size() == 4);

  auto brute = optimize_grading(d, WageSpec::linear(), 3,
                                SearchMode::bruteforce, 1e-8);
  CHECK(res.best.cuts() == brute.best.cuts());
}

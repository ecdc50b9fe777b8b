#ifndef CONTESTS_CONTEST_HPP
#define CONTESTS_CONTEST_HPP

#include <span>
#include <string>
#include <vector>

#include "contests/distribution.hpp"

namespace contests {

struct RankProbability {
  double p;        // chance of finishing at rank i given n-1 opponents
  double p_prime;  // derivative in t
};

// p_i(t) = C(n-1, i-1) t^{i-1} (1-t)^{n-i}: the probability that exactly
// i-1 of n-1 independent opponents draw an ability below t. Rank 1 is best
// (low ability means low marginal cost here).
RankProbability rank_probability(int n, int i, double t);

// Prize schedule v_1 >= v_2 >= ... >= v_n >= 0 with n >= 2.
class PrizeVector {
 public:
  explicit PrizeVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int n() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }  // zero-based
  double total() const;
  std::string to_string() const;

 private:
  std::vector<double> values_;
};

// Marginal effect of prize i on a type-theta contestant's equilibrium effort:
//   m_i(theta) = -Integral_{F(theta)}^{1} p_i'(t) / F^{-1}(t) dt.
// m_i(1) = 0; m_i(0) is computed when the integral converges at zero and
// rejected with a NumericError when it provably diverges.
double marginal_effect(const Distribution& d, int n, int i, double theta,
                       double tol = 1e-10);

struct EquilibriumCurve {
  std::vector<double> thetas;
  std::vector<double> efforts;
  double theta_min = 0.0;
};

// Uniform grid on [theta_min, theta_max], endpoint inclusive.
std::vector<double> make_theta_grid(int points, double theta_min = 1e-3,
                                    double theta_max = 1.0);

// Symmetric equilibrium effort g(theta) sampled on a strictly increasing
// grid inside (0, 1]. Evaluated in prize-gap form
//   g(theta) = sum_i (v_i - v_{i+1}) * Integral_{F(theta)}^1 q_i(t)/F^{-1}(t) dt,
// whose integrands q_i(t) = -sum_{j<=i} p_j'(t) are pointwise positive, so
// the sum never relies on cancellation. Panels between consecutive grid
// points are integrated once and accumulated from the top of the grid down.
EquilibriumCurve equilibrium_effort_curve(const Distribution& d,
                                          const PrizeVector& v,
                                          std::span<const double> grid,
                                          double tol = 1e-10);

// Single-point gap-form evaluation of g(theta).
double effort_at(const Distribution& d, const PrizeVector& v, double theta,
                 double tol = 1e-10);

// Direct form sum_i v_i m_i(theta); slower and cancellation-prone, kept as a
// cross-check for the gap form.
double effort_at_direct(const Distribution& d, const PrizeVector& v,
                        double theta, double tol = 1e-10);

enum class LambdaMethod { closed_form, quadrature };
enum class LambdaPolicy { prefer_closed_form, quadrature_only };

struct MarginalEffects {
  std::vector<double> lambdas;         // lambda_i = E[m_i(theta)]
  std::vector<LambdaMethod> methods;   // how each entry was obtained
};

// Expected marginal effects lambda_i = -Integral_0^1 p_i'(t) h(t) dt with
// h(t) = t / F^{-1}(t). The power family uses its closed forms unless the
// policy forces quadrature.
MarginalEffects expected_marginal_effects(
    const Distribution& d, int n,
    LambdaPolicy policy = LambdaPolicy::prefer_closed_form, double tol = 1e-10);

// Closed-form lambda_i for F = theta^p, p > 1/2.
double closed_form_lambda_power(double p, int n, int i);

// Expected equilibrium effort E[g(theta)] = sum_i v_i lambda_i.
double expected_effort(const Distribution& d, const PrizeVector& v,
                       double tol = 1e-10);
double expected_effort(const MarginalEffects& effects, const PrizeVector& v);

// Prefix-sum dominance with equal totals (tolerance 1e-12).
bool majorizes(const PrizeVector& v, const PrizeVector& w);

struct ContestComparison {
  double effort_v = 0.0;
  double effort_w = 0.0;
  double delta = 0.0;                // effort_v - effort_w
  std::vector<std::string> tags;     // which comparison hypotheses hold
  int predicted_sign = 0;            // +1 / -1 when a hypothesis predicts one
  bool sign_consistent = true;       // realized delta matches the prediction
};

// Expected-effort comparison of two prize schedules under one distribution,
// annotated with the monotone-density single-prize-change rule and the
// equal-endpoint majorization rule where their hypotheses hold.
ContestComparison compare_contests(const Distribution& d, const PrizeVector& v,
                                   const PrizeVector& w, double tol = 1e-10);

}  // namespace contests

#endif

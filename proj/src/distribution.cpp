#include "contests/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "contests/numerics.hpp"

namespace contests {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_unit(double v, const char* what) {
  if (!(v >= 0.0) || v > 1.0) {
    std::ostringstream msg;
    msg << what << " must lie in [0, 1], got " << v;
    throw ValidationError(msg.str());
  }
}

}  // namespace

Distribution Distribution::power(double p) {
  if (!(p > 0.0)) throw ValidationError("power distribution: p must be > 0");
  Distribution d;
  d.family_ = Family::power;
  d.p_ = p;
  d.check_invariants();
  return d;
}

Distribution Distribution::reflected_power(double p) {
  if (!(p > 0.0))
    throw ValidationError("reflected_power distribution: p must be > 0");
  Distribution d;
  d.family_ = Family::reflected_power;
  d.p_ = p;
  d.check_invariants();
  return d;
}

Distribution Distribution::tabulated(std::vector<double> thetas,
                                     std::vector<double> cdf_values) {
  if (thetas.size() != cdf_values.size() || thetas.size() < 2)
    throw ValidationError("tabulated distribution: need >= 2 matching rows");
  if (thetas.front() != 0.0 || cdf_values.front() != 0.0 ||
      thetas.back() != 1.0 || cdf_values.back() != 1.0)
    throw ValidationError(
        "tabulated distribution: endpoints must be (0,0) and (1,1)");
  for (std::size_t i = 1; i < thetas.size(); ++i)
    if (!(thetas[i] > thetas[i - 1]) || !(cdf_values[i] > cdf_values[i - 1]))
      throw ValidationError(
          "tabulated distribution: rows must be strictly increasing");
  Distribution d;
  d.family_ = Family::tabulated;
  d.p_ = kNaN;
  d.table_ = std::make_shared<const MonotoneCubic>(std::move(thetas),
                                                   std::move(cdf_values));
  d.check_invariants();
  return d;
}

Distribution Distribution::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("tabulated distribution: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("tabulated distribution: empty file " + path);
  std::vector<double> x, y;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double a, b;
    if (!(row >> a >> b)) {
      std::ostringstream msg;
      msg << "tabulated distribution: bad row at " << path << ":" << line_no;
      throw ValidationError(msg.str());
    }
    x.push_back(a);
    y.push_back(b);
  }
  return tabulated(std::move(x), std::move(y));
}

double Distribution::cdf(double theta) const {
  check_unit(theta, "theta");
  switch (family_) {
    case Family::power:
      return std::pow(theta, p_);
    case Family::reflected_power:
      // 1 - (1-theta)^p without cancellation near theta = 0
      return -std::expm1(p_ * std::log1p(-theta));
    case Family::tabulated:
      return table_->value(theta);
  }
  return 0.0;
}

double Distribution::pdf(double theta) const {
  check_unit(theta, "theta");
  switch (family_) {
    case Family::power:
      return p_ * std::pow(theta, p_ - 1.0);
    case Family::reflected_power:
      return p_ * std::pow(1.0 - theta, p_ - 1.0);
    case Family::tabulated:
      return table_->derivative(theta);
  }
  return 0.0;
}

double Distribution::pdf_derivative(double theta) const {
  check_unit(theta, "theta");
  switch (family_) {
    case Family::power:
      return p_ * (p_ - 1.0) * std::pow(theta, p_ - 2.0);
    case Family::reflected_power:
      return -p_ * (p_ - 1.0) * std::pow(1.0 - theta, p_ - 2.0);
    case Family::tabulated:
      throw NumericError("pdf_derivative: tabulated density has no derivative");
  }
  return 0.0;
}

double Distribution::quantile(double t) const {
  check_unit(t, "t");
  switch (family_) {
    case Family::power:
      return std::pow(t, 1.0 / p_);
    case Family::reflected_power:
      // 1 - (1-t)^{1/p}, stable down to subnormal t
      return -std::expm1(std::log1p(-t) / p_);
    case Family::tabulated: {
      if (t == 0.0) return 0.0;
      if (t == 1.0) return 1.0;
      const MonotoneCubic& table = *table_;
      return invert_monotone([&table](double x) { return table.value(x); }, t,
                             0.0, 1.0, 1e-13);
    }
  }
  return 0.0;
}

std::string Distribution::describe() const {
  std::ostringstream out;
  switch (family_) {
    case Family::power:
      out << "power(" << p_ << ")";
      break;
    case Family::reflected_power:
      out << "reflected_power(" << p_ << ")";
      break;
    case Family::tabulated:
      out << "tabulated[" << table_->knots().size() << " rows]";
      break;
  }
  return out.str();
}

void Distribution::check_invariants() const {
  if (cdf(0.0) != 0.0 || std::abs(cdf(1.0) - 1.0) > 1e-12)
    throw ValidationError("distribution: F must run from 0 to 1");
  double prev = 0.0;
  for (int j = 1; j <= 1024; ++j) {
    const double x = static_cast<double>(j) / 1024.0;
    const double v = cdf(x);
    if (v + 1e-12 < prev)
      throw ValidationError("distribution: F must be nondecreasing");
    prev = v;
    // interior check only: closed-form densities may blow up at the ends
    if (j < 1024 && !(pdf(x) >= 0.0))
      throw ValidationError("distribution: density must be nonnegative");
  }
  // density integrates back to the CDF mass; tabulated densities are only
  // piecewise smooth, so integrate them knot interval by knot interval
  auto f = [this](double x) { return pdf(x); };
  double mass = 0.0;
  if (family_ == Family::tabulated) {
    const auto& knots = table_->knots();
    for (std::size_t i = 1; i < knots.size(); ++i)
      mass += integrate(f, knots[i - 1], knots[i], 1e-11).value;
  } else {
    mass = integrate(f, 0.0, 1.0, 1e-10).value;
  }
  if (std::abs(mass - 1.0) > 1e-8)
    throw ValidationError("distribution: density does not integrate to 1");
  for (int j = 0; j < 256; ++j) {
    const double t = (j + 0.5) / 256.0;
    if (std::abs(cdf(quantile(t)) - t) > 1e-10)
      throw ValidationError("distribution: quantile round trip failed");
  }
}

double h_value(const Distribution& d, double t) {
  switch (d.family()) {
    case Family::power:
      // t / t^{1/p} = t^{1 - 1/p}; the direct power form never under- or
      // overflows for p > 1/2 because |1 - 1/p| < 1.
      return std::pow(t, 1.0 - 1.0 / d.shape());
    case Family::reflected_power:
      return t / -std::expm1(std::log1p(-t) / d.shape());
    case Family::tabulated: {
      const double x = d.quantile(t);
      if (x <= 0.0)
        throw NumericError("h_value: quantile vanished at positive t");
      return t / x;
    }
  }
  return 0.0;
}

HProfile h_profile(const Distribution& d, double t) {
  if (t == 0.0)
    throw NumericError("h_profile: h(0) is a limit, not a value; t must be > 0");
  if (!(t > 0.0) || t > 1.0)
    throw ValidationError("h_profile: t must lie in (0, 1]");

  HProfile out;
  out.h = h_value(d, t);
  if (d.family() == Family::power) {
    const double p = d.shape();
    out.h_prime = (1.0 - 1.0 / p) * std::pow(t, -1.0 / p);
    return out;
  }

  const double x = d.quantile(t);
  const double fx = d.pdf(x);
  if (std::isfinite(fx) && fx > 1e-12 && x > 0.0) {
    out.h_prime = (x * fx - t) / (fx * x * x);
    return out;
  }
  // density unusable here: fall back to a symmetric difference on h
  double step = std::min({1e-5, t / 2.0, (1.0 - t) / 2.0});
  if (step <= 0.0) {  // t == 1
    step = std::min(1e-5, t / 2.0);
    out.h_prime = (h_value(d, t) - h_value(d, t - step)) / step;
  } else {
    out.h_prime = (h_value(d, t + step) - h_value(d, t - step)) / (2.0 * step);
  }
  return out;
}

namespace {

bool tail_converges(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x) || x < 0.0) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] * (1.0 + 1e-12) + 1e-300) return false;
  if (v.back() < 1e-4) return true;
  // Slow but genuine decay: estimate the exponent alpha in value ~ theta^alpha
  // from the last five probe halvings and accept a clearly positive rate.
  const std::size_t last = v.size() - 1;
  const double head = v[last - 5];
  const double tail = v[last];
  if (!(head > 0.0) || !(tail > 0.0)) return false;
  const double alpha = std::log2(head / tail) / 5.0;
  return alpha > 0.01;
}

}  // namespace

Assumption1Report validate_assumption1(const Distribution& d) {
  Assumption1Report report;
  std::vector<double> a_tail, b_tail;
  for (int k = 5; k <= 30; ++k) {
    const double theta = std::ldexp(1.0, -k);
    const double a = d.pdf(theta) * d.cdf(theta);
    const double q = d.quantile(theta);
    const double b = (q > 0.0) ? theta * theta / q
                               : std::numeric_limits<double>::infinity();
    report.tail_samples.push_back({theta, a, b});
    a_tail.push_back(a);
    b_tail.push_back(b);
  }
  report.passed = tail_converges(a_tail) && tail_converges(b_tail);
  return report;
}

namespace {

constexpr int kClassifyGrid = 512;
constexpr double kClassifySlack = 1e-9;

HClassification classify_numeric(const Distribution& d) {
  HClassification out;
  out.method = ClassifyMethod::numeric;

  std::vector<double> h(kClassifyGrid), hp(kClassifyGrid);
  for (int k = 0; k < kClassifyGrid; ++k) {
    const double t = static_cast<double>(k + 1) / (kClassifyGrid + 1);
    const HProfile prof = h_profile(d, t);
    h[k] = prof.h;
    hp[k] = prof.h_prime;
  }

  bool inc = true, dec = true;
  for (double v : hp) {
    inc = inc && v >= -kClassifySlack;
    dec = dec && v <= kClassifySlack;
  }
  bool concave = true, convex = true;
  for (int k = 1; k + 1 < kClassifyGrid; ++k) {
    const double d2 = h[k + 1] - 2.0 * h[k] + h[k - 1];
    concave = concave && d2 <= kClassifySlack;
    convex = convex && d2 >= -kClassifySlack;
  }

  if (inc && dec) {
    out.flat = true;
    out.monotonicity = Monotonicity::increasing;
    out.curvature = Curvature::concave;
    return out;
  }
  out.monotonicity = inc   ? Monotonicity::increasing
                     : dec ? Monotonicity::decreasing
                           : Monotonicity::indeterminate;
  out.curvature = concave   ? Curvature::concave
                  : convex  ? Curvature::convex
                            : Curvature::indeterminate;
  return out;
}

}  // namespace

HClassification classify_h(const Distribution& d, bool force_numeric) {
  if (d.family() == Family::tabulated || force_numeric)
    return classify_numeric(d);

  const double p = d.shape();
  HClassification out;
  out.method = ClassifyMethod::closed_form;
  out.flat = (p == 1.0);
  if (d.family() == Family::power) {
    if (p <= 0.5)
      throw NumericError(
          "classify_h: power(p) needs p > 1/2, h is not integrable otherwise");
    if (p >= 1.0) {
      out.monotonicity = Monotonicity::increasing;
      out.curvature = Curvature::concave;
    } else {
      out.monotonicity = Monotonicity::decreasing;
      out.curvature = Curvature::convex;
    }
  } else {
    if (p >= 1.0) {
      out.monotonicity = Monotonicity::decreasing;
      out.curvature = Curvature::concave;
    } else {
      out.monotonicity = Monotonicity::increasing;
      out.curvature = Curvature::convex;
    }
  }
  return out;
}

bool cdf_dominated_by(const Distribution& f, const Distribution& g) {
  for (int j = 0; j <= 1023; ++j) {
    const double x = static_cast<double>(j) / 1023.0;
    if (f.cdf(x) > g.cdf(x) + 1e-12) return false;
  }
  return true;
}

namespace {

Monotonicity grid_monotonicity(const std::function<double(double)>& f) {
  double prev = f(1.0 / (kClassifyGrid + 1));
  bool inc = true, dec = true;
  for (int k = 1; k < kClassifyGrid; ++k) {
    const double x = static_cast<double>(k + 1) / (kClassifyGrid + 1);
    const double v = f(x);
    const double slack = kClassifySlack * std::max({1.0, std::abs(v), std::abs(prev)});
    inc = inc && v >= prev - slack;
    dec = dec && v <= prev + slack;
    prev = v;
  }
  if (inc) return Monotonicity::increasing;
  if (dec) return Monotonicity::decreasing;
  return Monotonicity::indeterminate;
}

}  // namespace

Monotonicity density_monotonicity(const Distribution& d) {
  switch (d.family()) {
    case Family::power:
      return d.shape() >= 1.0 ? Monotonicity::increasing
                              : Monotonicity::decreasing;
    case Family::reflected_power:
      return d.shape() > 1.0 ? Monotonicity::decreasing
                             : Monotonicity::increasing;
    case Family::tabulated:
      return grid_monotonicity([&d](double x) { return d.pdf(x); });
  }
  return Monotonicity::indeterminate;
}

Monotonicity curvature_driver_monotonicity(const Distribution& d) {
  switch (d.family()) {
    case Family::power:
      // f(x) x^2 / F(x)^2 = p x^{1-p}
      return d.shape() >= 1.0 ? Monotonicity::decreasing
                              : Monotonicity::increasing;
    case Family::reflected_power:
      return d.shape() >= 1.0 ? Monotonicity::decreasing
                              : Monotonicity::increasing;
    case Family::tabulated:
      return grid_monotonicity([&d](double x) {
        const double F = d.cdf(x);
        return d.pdf(x) * x * x / (F * F);
      });
  }
  return Monotonicity::indeterminate;
}

}  // namespace contests

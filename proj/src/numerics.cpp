#include "contests/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace contests {

namespace {

constexpr double kUMax = 6.5;  // node offsets underflow well before this
constexpr int kMaxLevel = 12;

struct NodeGeometry {
  double offset;  // distance from the nearer endpoint, in half-width units
  double weight;
};

// Geometry at abscissa parameter u >= 0. The offset 1 - tanh(v) is formed as
// 2e^{-2v}/(1+e^{-2v}) so nodes keep full relative precision next to the
// endpoint. Returns false once the offset underflows to zero.
bool node_geometry(double u, NodeGeometry& g) {
  const double v = 0.5 * std::numbers::pi * std::sinh(u);
  const double e = std::exp(-2.0 * v);
  if (e == 0.0) return false;
  const double d = 1.0 + e;
  g.offset = 2.0 * e / d;
  g.weight = 0.5 * std::numbers::pi * std::cosh(u) * 4.0 * e / (d * d);
  return std::isfinite(g.weight) && g.weight > 0.0;
}

}  // namespace

std::vector<QuadratureResult> integrate_many(
    const std::function<void(double, std::span<double>)>& f,
    std::size_t components, double a, double b, double tol) {
  if (components == 0)
    throw ValidationError("integrate_many: needs at least one component");
  if (std::isnan(a) || std::isnan(b) || a > b)
    throw ValidationError("integrate: requires a <= b");
  if (!(tol > 0.0)) throw ValidationError("integrate: tol must be positive");

  std::vector<QuadratureResult> out(components);
  if (a == b) {
    for (auto& r : out) r.evaluations = 1;
    return out;
  }

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> raw(components, 0.0);      // sum of weight * f(node)
  std::vector<double> raw_abs(components, 0.0);  // rounding floor
  std::vector<double> value(components, 0.0);
  std::vector<double> err(components, std::numeric_limits<double>::infinity());
  std::vector<double> sample(components);
  long evaluations = 0;

  auto add_node = [&](double t, double w) {
    f(t, std::span<double>(sample.data(), components));
    ++evaluations;
    for (std::size_t c = 0; c < components; ++c) {
      const double term = w * sample[c];
      if (!std::isfinite(term)) {
        std::ostringstream msg;
        msg << "integrate: non-finite integrand value near t=" << t;
        throw QuadratureFailure(msg.str(), value[c], err[c]);
      }
      raw[c] += term;
      raw_abs[c] += std::abs(term);
    }
  };

  double h = 1.0;
  for (int level = 0; level <= kMaxLevel; ++level, h *= 0.5) {
    const long first = (level == 0) ? 0 : 1;
    const long step = (level == 0) ? 1 : 2;  // deeper levels add the odd multiples
    for (long k = first; static_cast<double>(k) * h <= kUMax; k += step) {
      NodeGeometry g;
      if (!node_geometry(static_cast<double>(k) * h, g)) break;
      if (k == 0) {
        add_node(center, g.weight);
        continue;
      }
      const double left = a + half * g.offset;
      const double right = b - half * g.offset;
      if (left > a) add_node(left, g.weight);
      if (right < b) add_node(right, g.weight);
    }

    bool converged = level >= 2;  // never trust the first refinements
    for (std::size_t c = 0; c < components; ++c) {
      const double current = half * h * raw[c];
      err[c] = std::max(std::abs(current - value[c]),
                        eps * half * h * raw_abs[c]);
      value[c] = current;
      if (err[c] > tol) converged = false;
    }
    if (converged) {
      for (std::size_t c = 0; c < components; ++c)
        out[c] = {value[c], err[c], evaluations};
      return out;
    }
  }

  std::size_t worst = 0;
  for (std::size_t c = 1; c < components; ++c)
    if (err[c] > err[worst]) worst = c;
  std::ostringstream msg;
  msg << "quadrature failure: error estimate " << err[worst]
      << " above tolerance " << tol << " after " << kMaxLevel
      << " refinement levels";
  throw QuadratureFailure(msg.str(), value[worst], err[worst]);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol) {
  auto wrapped = [&f](double t, std::span<double> out) { out[0] = f(t); };
  return integrate_many(wrapped, 1, a, b, tol)[0];
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream msg;
    msg << "log_beta: parameters must be positive (a=" << a << ", b=" << b
        << ")";
    throw NumericError(msg.str());
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double binomial_coefficient(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw ValidationError("binomial_coefficient: requires 0 <= k <= n");
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / j;
  return std::round(r);
}

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw NumericError("gamma_p: requires a > 0 and x >= 0");
  if (x == 0.0) return 0.0;

  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16)
        return sum * std::exp(log_prefactor);
    }
    throw NumericError("gamma_p: series did not converge");
  }

  // Continued fraction for Q(a, x), modified Lentz.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return 1.0 - std::exp(log_prefactor) * h;
  }
  throw NumericError("gamma_p: continued fraction did not converge");
}

double invert_monotone(const std::function<double(double)>& g, double target,
                       double lo, double hi, double tol) {
  if (!(lo <= hi)) throw ValidationError("invert_monotone: requires lo <= hi");
  if (!(tol > 0.0))
    throw ValidationError("invert_monotone: tol must be positive");

  double flo = g(lo) - target;
  double fhi = g(hi) - target;
  if (std::isnan(flo) || std::isnan(fhi))
    throw NumericError("invert_monotone: function returned NaN at a bracket end");
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream msg;
    msg << "invert_monotone: target " << target << " outside bracket ["
        << flo + target << ", " << fhi + target << "]";
    throw NumericError(msg.str());
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid;
    if (it % 2 == 0 && fhi != flo) {
      // secant probe, clipped away from the edges so progress is guaranteed
      mid = lo - flo * (hi - lo) / (fhi - flo);
      const double margin = 0.01 * (hi - lo);
      if (!(mid > lo + margin && mid < hi - margin)) mid = 0.5 * (lo + hi);
    } else {
      mid = 0.5 * (lo + hi);
    }
    const double fm = g(mid) - target;
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

CrossingReport crossing_count(std::span<const double> grid,
                              std::span<const double> curve_a,
                              std::span<const double> curve_b,
                              double dead_band) {
  if (grid.size() != curve_a.size() || grid.size() != curve_b.size())
    throw ValidationError("crossing_count: curves must share the grid");
  if (grid.size() < 3)
    throw ValidationError("crossing_count: need at least 3 samples");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("crossing_count: grid must be strictly increasing");

  if (dead_band < 0.0) {
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ma = std::max(ma, std::abs(curve_a[i]));
      mb = std::max(mb, std::abs(curve_b[i]));
    }
    dead_band = 1e-9 * (ma + mb);
  }

  CrossingReport report;
  int last_sign = 0;
  std::size_t last_idx = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = curve_a[i] - curve_b[i];
    const int s = (std::abs(d) <= dead_band) ? 0 : (d > 0.0 ? 1 : -1);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      ++report.count;
      const double d0 = curve_a[last_idx] - curve_b[last_idx];
      const double x0 = grid[last_idx];
      const double x1 = grid[i];
      report.locations.push_back(x0 + (x1 - x0) * (d0 / (d0 - d)));
    }
    last_sign = s;
    last_idx = i;
  }
  return report;
}

}  // namespace contests

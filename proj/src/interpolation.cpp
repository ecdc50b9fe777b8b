#include "contests/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "contests/errors.hpp"

namespace contests {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw ValidationError("MonotoneCubic: need >= 2 matching knots");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw ValidationError("MonotoneCubic: abscissae must be strictly increasing");

  const std::size_t n = x_.size();
  std::vector<double> d(n - 1);  // secant slopes
  bool nondec = true, noninc = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    nondec = nondec && d[i] >= 0.0;
    noninc = noninc && d[i] <= 0.0;
  }
  if (!nondec && !noninc)
    throw ValidationError("MonotoneCubic: data must be monotone");

  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0)
      m_[i] = 0.0;
    else
      m_[i] = 0.5 * (d[i - 1] + d[i]);
  }
  // Fritsch-Carlson limiter: pull slopes back inside the monotone region.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = 0.0;
      m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / d[i];
    const double b = m_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m_[i] = tau * a * d[i];
      m_[i + 1] = tau * b * d[i];
    }
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  if (hi == 0) hi = 1;
  if (hi == x_.size()) hi = x_.size() - 1;
  return hi - 1;
}

double MonotoneCubic::value(double x) const {
  x = std::clamp(x, x_.front(), x_.back());
  const std::size_t i = segment(x);
  const double dx = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / dx;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * dx * m_[i] + h01 * y_[i + 1] + h11 * dx * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  x = std::clamp(x, x_.front(), x_.back());
  const std::size_t i = segment(x);
  const double dx = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / dx;
  const double t2 = t * t;
  const double g00 = (6.0 * t2 - 6.0 * t) / dx;
  const double g10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double g01 = (-6.0 * t2 + 6.0 * t) / dx;
  const double g11 = 3.0 * t2 - 2.0 * t;
  return g00 * y_[i] + g10 * m_[i] + g01 * y_[i + 1] + g11 * m_[i + 1];
}

}  // namespace contests

#ifndef CONTESTS_INTERPOLATION_HPP
#define CONTESTS_INTERPOLATION_HPP

#include <vector>

namespace contests {

// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slope
// limiting) for monotone tabulated data. Works for nondecreasing or
// nonincreasing y; the interpolant stays monotone between knots, which keeps
// tabulated densities nonnegative and tabulated wages ordered.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  const std::vector<double>& knots() const { return x_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // limited knot slopes
};

}  // namespace contests

#endif

#ifndef CONTESTS_ERRORS_HPP
#define CONTESTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace contests {

// Malformed input: bad parameters, mismatched grids, unparseable files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Computation cannot proceed or converge: divergent integrals, domain
// violations, exhausted refinement budgets.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature gave up; keeps the best estimate and its error bound so callers
// can report how far off the result may be.
class QuadratureFailure : public NumericError {
 public:
  QuadratureFailure(const std::string& message, double best, double error)
      : NumericError(message), best_estimate(best), error_bound(error) {}

  double best_estimate;
  double error_bound;
};

}  // namespace contests

#endif

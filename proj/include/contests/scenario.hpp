#ifndef CONTESTS_SCENARIO_HPP
#define CONTESTS_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "contests/distribution.hpp"
#include "contests/grading.hpp"

namespace contests {

// Versioned key=value scenario file. Recognized keys:
//   version        required, must be 1
//   n              required, >= 2
//   distribution   required: power(P) | reflected_power(P) | tabulated(PATH)
//   wage           inverse | linear | tabulated(PATH)
//   prize_vector   comma-separated nonincreasing reals
//   prize_vector_alt  second vector for comparisons
//   theta, theta_min, samples, seed, tol, grid_points
// Unknown or repeated keys are rejected. '#' starts a comment line.
// Relative tabulated paths resolve against the scenario file's directory.
struct ScenarioConfig {
  int version = 1;
  int n = 0;
  std::string distribution;
  std::optional<std::string> wage;
  std::optional<std::vector<double>> prize_vector;
  std::optional<std::vector<double>> prize_vector_alt;
  std::optional<double> theta;
  std::optional<double> theta_min;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> grid_points;
  std::string base_dir;

  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig parse(std::istream& in, std::string base_dir);

  Distribution make_distribution() const;
  WageSpec make_wage() const;  // requires wage to be present

  // Canonical serialization (sorted keys, full-precision values) and its
  // 64-bit FNV-1a fingerprint, used to stamp artifacts.
  std::string canonical() const;
  std::string hash() const;
};

std::vector<double> parse_number_list(const std::string& text);

}  // namespace contests

#endif

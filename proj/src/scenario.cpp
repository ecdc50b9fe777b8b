#include "contests/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "contests/errors.hpp"
#include "contests/table.hpp"

namespace contests {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("scenario: bad numeric value for " + key + ": '" +
                          text + "'");
  }
}

long long parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("scenario: bad integer value for " + key + ": '" +
                          text + "'");
  }
}

// splits "name(arg)" into name and arg; arg empty when absent
std::pair<std::string, std::string> split_descriptor(const std::string& text) {
  const std::size_t open = text.find('(');
  if (open == std::string::npos) return {text, ""};
  if (text.back() != ')')
    throw ValidationError("scenario: malformed descriptor '" + text + "'");
  return {text.substr(0, open), text.substr(open + 1, text.size() - open - 2)};
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ValidationError("empty entry in number list '" + text + "'");
    out.push_back(parse_double("list", item));
  }
  if (out.empty()) throw ValidationError("empty number list");
  return out;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path);
  return parse(in, std::filesystem::path(path).parent_path().string());
}

ScenarioConfig ScenarioConfig::parse(std::istream& in, std::string base_dir) {
  ScenarioConfig cfg;
  cfg.base_dir = std::move(base_dir);
  std::set<std::string> seen;
  bool have_version = false, have_n = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "scenario line " << line_no << ": expected key=value";
      throw ValidationError(msg.str());
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!seen.insert(key).second)
      throw ValidationError("scenario: repeated key '" + key + "'");
    if (value.empty())
      throw ValidationError("scenario: empty value for key '" + key + "'");

    if (key == "version") {
      if (parse_int(key, value) != 1)
        throw ValidationError("scenario: unsupported version '" + value + "'");
      have_version = true;
    } else if (key == "n") {
      const long long n = parse_int(key, value);
      if (n < 2 || n > 64)
        throw ValidationError("scenario: n must lie in 2..64");
      cfg.n = static_cast<int>(n);
      have_n = true;
    } else if (key == "distribution") {
      cfg.distribution = value;
    } else if (key == "wage") {
      cfg.wage = value;
    } else if (key == "prize_vector") {
      cfg.prize_vector = parse_number_list(value);
    } else if (key == "prize_vector_alt") {
      cfg.prize_vector_alt = parse_number_list(value);
    } else if (key == "theta") {
      cfg.theta = parse_double(key, value);
    } else if (key == "theta_min") {
      cfg.theta_min = parse_double(key, value);
    } else if (key == "samples") {
      cfg.samples = parse_int(key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "tol") {
      cfg.tol = parse_double(key, value);
    } else if (key == "grid_points") {
      cfg.grid_points = static_cast<int>(parse_int(key, value));
    } else {
      throw ValidationError("scenario: unknown key '" + key + "'");
    }
  }
  if (!have_version)
    throw ValidationError("scenario: missing required key 'version'");
  if (!have_n) throw ValidationError("scenario: missing required key 'n'");
  if (cfg.distribution.empty())
    throw ValidationError("scenario: missing required key 'distribution'");
  return cfg;
}

Distribution ScenarioConfig::make_distribution() const {
  const auto [name, arg] = split_descriptor(distribution);
  if (name == "power") {
    if (arg.empty())
      throw ValidationError("scenario: power distribution needs a shape");
    return Distribution::power(parse_double("distribution", arg));
  }
  if (name == "reflected_power") {
    if (arg.empty())
      throw ValidationError(
          "scenario: reflected_power distribution needs a shape");
    return Distribution::reflected_power(parse_double("distribution", arg));
  }
  if (name == "tabulated") {
    if (arg.empty())
      throw ValidationError("scenario: tabulated distribution needs a path");
    return Distribution::tabulated_from_file(resolve(base_dir, arg));
  }
  throw ValidationError("scenario: unknown distribution '" + distribution +
                        "'");
}

WageSpec ScenarioConfig::make_wage() const {
  if (!wage) throw ValidationError("scenario: this command requires a wage");
  const auto [name, arg] = split_descriptor(*wage);
  if (name == "inverse") return WageSpec::inverse_ability();
  if (name == "linear") return WageSpec::linear();
  if (name == "tabulated") {
    if (arg.empty())
      throw ValidationError("scenario: tabulated wage needs a path");
    return WageSpec::tabulated_from_file(resolve(base_dir, arg));
  }
  throw ValidationError("scenario: unknown wage '" + *wage + "'");
}

std::string ScenarioConfig::canonical() const {
  std::ostringstream out;
  out << "version=1\n";
  out << "n=" << n << "\n";
  out << "distribution=" << distribution << "\n";
  if (wage) out << "wage=" << *wage << "\n";
  auto emit_list = [&out](const char* key, const std::vector<double>& v) {
    out << key << "=";
    for (std::size_t i = 0; i < v.size(); ++i)
      out << (i ? "," : "") << format_full(v[i]);
    out << "\n";
  };
  if (prize_vector) emit_list("prize_vector", *prize_vector);
  if (prize_vector_alt) emit_list("prize_vector_alt", *prize_vector_alt);
  if (theta) out << "theta=" << format_full(*theta) << "\n";
  if (theta_min) out << "theta_min=" << format_full(*theta_min) << "\n";
  if (samples) out << "samples=" << *samples << "\n";
  if (seed) out << "seed=" << *seed << "\n";
  if (tol) out << "tol=" << format_full(*tol) << "\n";
  if (grid_points) out << "grid_points=" << *grid_points << "\n";
  return out.str();
}

std::string ScenarioConfig::hash() const {
  const std::string text = canonical();
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace contests

#include "contests/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "contests/contest.hpp"
#include "contests/distribution.hpp"
#include "contests/errors.hpp"
#include "contests/extensions.hpp"
#include "contests/grading.hpp"
#include "contests/numerics.hpp"
#include "contests/scenario.hpp"
#include "contests/table.hpp"
#include "contests/verify.hpp"

namespace contests {

namespace {

using nlohmann::json;

struct Options {
  std::string scenario_path;
  std::string out_dir;
  double tol = -1.0;  // <0 means unset
  bool quiet = false;
  std::string mode = "brute";
  double p = -1.0;
  std::string p_list;
  double r = 0.0;
  double B = 0.0;
  long long seed = -1;  // <0 means unset
};

struct Run {
  ScenarioConfig cfg;
  Options opt;
  double tol = 1e-10;
  std::string command;
  std::vector<std::string> artifacts;

  void emit(const std::string& name, const Table& table,
            const std::vector<std::string>& comments = {}) {
    if (!opt.quiet) write_table(std::cout, table, comments);
    if (!opt.out_dir.empty()) {
      write_table_file(
          (std::filesystem::path(opt.out_dir) / name).string(), table,
          comments);
      artifacts.push_back(name);
    }
  }

  void finish(bool pass, const json& metrics) {
    if (opt.out_dir.empty()) return;
    json j;
    j["command"] = command;
    j["scenario_hash"] = cfg.hash();
    j["tolerance"] = tol;
    j["pass"] = pass;
    j["metrics"] = metrics;
    j["artifacts"] = artifacts;
    const auto path = std::filesystem::path(opt.out_dir) / "summary.json";
    const std::string tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw ValidationError("cannot open " + tmp + " for writing");
      out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
  }
};

Run make_run(const Options& opt, const std::string& command) {
  Run run{ScenarioConfig::load(opt.scenario_path), opt, 1e-10, command, {}};
  if (opt.tol > 0.0)
    run.tol = opt.tol;
  else if (run.cfg.tol)
    run.tol = *run.cfg.tol;
  if (!(run.tol > 0.0) || !(run.tol < 1.0))
    throw ValidationError("tolerance must lie in (0, 1)");
  if (!opt.out_dir.empty())
    std::filesystem::create_directories(opt.out_dir);
  return run;
}

const char* name_of(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    default: return "indeterminate";
  }
}

const char* name_of(Curvature c) {
  switch (c) {
    case Curvature::concave: return "concave";
    case Curvature::convex: return "convex";
    default: return "indeterminate";
  }
}

std::string lambda_order_string(const std::vector<double>& lam) {
  struct Entry {
    std::string label;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(lam.size() + 1);
  for (std::size_t i = 0; i < lam.size(); ++i)
    entries.push_back({"L" + std::to_string(i + 1), lam[i]});
  entries.push_back({"0", 0.0});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.value > b.value;
                   });
  std::string out = entries.front().label;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const bool tied =
        std::abs(entries[i].value - entries[i - 1].value) <= 1e-9;
    out += tied ? " = " : " > ";
    out += entries[i].label;
  }
  return out;
}

PrizeVector resolve_prizes(const Run& run, const Distribution& d) {
  const bool has_wage = run.cfg.wage.has_value();
  const bool has_vec = run.cfg.prize_vector.has_value();
  if (has_wage == has_vec)
    throw ValidationError(
        "this command requires exactly one of wage and prize_vector");
  if (has_vec) {
    if (static_cast<int>(run.cfg.prize_vector->size()) != run.cfg.n)
      throw ValidationError("prize_vector length must equal n");
    return PrizeVector(*run.cfg.prize_vector);
  }
  const OrderStatWages wages =
      order_statistic_wages(d, run.cfg.make_wage(), run.cfg.n, run.tol);
  return PrizeVector(wages.vstar);
}

std::vector<double> curve_grid(const Run& run) {
  return make_theta_grid(run.cfg.grid_points.value_or(257),
                         run.cfg.theta_min.value_or(1e-3));
}

int cmd_dist_classify(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const HClassification cls = classify_h(d);
  const Assumption1Report a1 = validate_assumption1(d);

  Table t{{"property", "value"}, {}};
  t.add_row({"family", d.describe()});
  t.add_row({"h_monotonicity", name_of(cls.monotonicity)});
  t.add_row({"h_curvature", name_of(cls.curvature)});
  t.add_row({"h_flat", cls.flat ? "true" : "false"});
  t.add_row({"method", cls.method == ClassifyMethod::closed_form
                           ? "closed_form"
                           : "numeric"});
  t.add_row({"tail_conditions", a1.passed ? "pass" : "fail"});
  run.emit("classification.tsv", t);

  Table tail{{"theta", "density_times_cdf", "theta_sq_over_quantile"}, {}};
  for (const auto& probe : a1.tail_samples)
    tail.add_row({format_full(probe.theta),
                  format_full(probe.density_times_cdf),
                  format_full(probe.theta_sq_over_quantile)});
  run.emit("assumption_tail.tsv", tail);

  json metrics;
  metrics["family"] = d.describe();
  metrics["h_monotonicity"] = name_of(cls.monotonicity);
  metrics["h_curvature"] = name_of(cls.curvature);
  metrics["h_flat"] = cls.flat;
  metrics["tail_conditions_pass"] = a1.passed;
  run.finish(a1.passed, metrics);
  return 0;
}

int cmd_effort_lambdas(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const MarginalEffects effects = expected_marginal_effects(
      d, run.cfg.n, LambdaPolicy::prefer_closed_form, run.tol);
  const std::string order = lambda_order_string(effects.lambdas);

  Table t{{"rank", "lambda", "method"}, {}};
  for (int i = 0; i < run.cfg.n; ++i)
    t.add_row({std::to_string(i + 1), format_fixed(effects.lambdas[i]),
               effects.methods[i] == LambdaMethod::closed_form
                   ? "closed_form"
                   : "quadrature"});
  run.emit("lambdas.tsv", t, {"ordering: " + order});

  json metrics;
  metrics["lambdas"] = effects.lambdas;
  metrics["ordering"] = order;
  run.finish(true, metrics);
  return 0;
}

int cmd_effort_curve(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const PrizeVector v = resolve_prizes(run, d);
  const std::vector<double> grid = curve_grid(run);
  const EquilibriumCurve curve =
      equilibrium_effort_curve(d, v, grid, run.tol);
  const double mean_effort = expected_effort(d, v, run.tol);

  Table t{{"theta", "effort"}, {}};
  for (std::size_t i = 0; i < curve.thetas.size(); ++i)
    t.add_row({format_fixed(curve.thetas[i]), format_fixed(curve.efforts[i])});
  run.emit("curve.tsv", t,
           {"prizes: " + v.to_string(),
            "expected_effort: " + format_full(mean_effort)});

  json metrics;
  metrics["prizes"] = v.values();
  metrics["expected_effort"] = mean_effort;
  metrics["points"] = curve.thetas.size();
  run.finish(true, metrics);
  return 0;
}

int cmd_effort_compare(Run& run) {
  if (run.cfg.wage)
    throw ValidationError(
        "effort compare works on prize_vector and prize_vector_alt, not a "
        "wage");
  if (!run.cfg.prize_vector || !run.cfg.prize_vector_alt)
    throw ValidationError(
        "effort compare requires prize_vector and prize_vector_alt");
  if (static_cast<int>(run.cfg.prize_vector->size()) != run.cfg.n ||
      static_cast<int>(run.cfg.prize_vector_alt->size()) != run.cfg.n)
    throw ValidationError("prize vectors must have length n");

  const Distribution d = run.cfg.make_distribution();
  const PrizeVector v(*run.cfg.prize_vector);
  const PrizeVector w(*run.cfg.prize_vector_alt);
  const ContestComparison cmp = compare_contests(d, v, w, run.tol);

  const std::vector<double> grid = curve_grid(run);
  const EquilibriumCurve cv = equilibrium_effort_curve(d, v, grid, run.tol);
  const EquilibriumCurve cw = equilibrium_effort_curve(d, w, grid, run.tol);
  const CrossingReport crossings =
      crossing_count(grid, cv.efforts, cw.efforts);

  std::string tags;
  for (const auto& tag : cmp.tags) {
    if (!tags.empty()) tags += ";";
    tags += tag;
  }

  Table t{{"metric", "value"}, {}};
  t.add_row({"expected_effort_v", format_fixed(cmp.effort_v)});
  t.add_row({"expected_effort_w", format_fixed(cmp.effort_w)});
  t.add_row({"delta", format_fixed(cmp.delta)});
  t.add_row({"predicted_sign", std::to_string(cmp.predicted_sign)});
  t.add_row({"sign_consistent", cmp.sign_consistent ? "true" : "false"});
  t.add_row({"tags", tags.empty() ? "-" : tags});
  t.add_row({"crossings", std::to_string(crossings.count)});
  run.emit("compare.tsv", t);

  Table curves{{"theta", "effort_v", "effort_w"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    curves.add_row({format_fixed(grid[i]), format_fixed(cv.efforts[i]),
                    format_fixed(cw.efforts[i])});
  run.emit("compare_curves.tsv", curves);

  json metrics;
  metrics["expected_effort_v"] = cmp.effort_v;
  metrics["expected_effort_w"] = cmp.effort_w;
  metrics["delta"] = cmp.delta;
  metrics["predicted_sign"] = cmp.predicted_sign;
  metrics["sign_consistent"] = cmp.sign_consistent;
  metrics["tags"] = cmp.tags;
  metrics["crossings"] = crossings.count;
  run.finish(cmp.sign_consistent, metrics);
  return 0;
}

int cmd_grading_wages(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const OrderStatWages wages =
      order_statistic_wages(d, run.cfg.make_wage(), run.cfg.n, run.tol);

  Table t{{"rank", "expected_wage"}, {}};
  for (int i = 0; i < run.cfg.n; ++i)
    t.add_row({std::to_string(i + 1), format_fixed(wages.vstar[i])});
  run.emit("wages.tsv", t);

  json metrics;
  metrics["vstar"] = wages.vstar;
  run.finish(true, metrics);
  return 0;
}

int cmd_grading_optimize(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const SearchMode mode = run.opt.mode == "structured"
                              ? SearchMode::structured
                              : SearchMode::bruteforce;
  const GradingSearchResult result =
      optimize_grading(d, run.cfg.make_wage(), run.cfg.n, mode, run.tol);

  std::vector<std::string> comments{
      "winner: " + result.best.to_string(),
      "effort: " + format_fixed(result.best_effort),
      "mode: " + run.opt.mode};
  if (result.fell_back_to_bruteforce)
    comments.push_back("note: shape indeterminate, fell back to bruteforce");

  Table t{{"cuts", "effort", "rank"}, {}};
  for (std::size_t i = 0; i < result.ranking.size(); ++i)
    t.add_row({result.ranking[i].first.to_string(),
               format_fixed(result.ranking[i].second),
               std::to_string(i + 1)});
  run.emit("grading_ranking.tsv", t, comments);

  json metrics;
  metrics["winner"] = result.best.to_string();
  metrics["effort"] = result.best_effort;
  metrics["mode"] = run.opt.mode;
  metrics["fell_back_to_bruteforce"] = result.fell_back_to_bruteforce;
  run.finish(true, metrics);
  return 0;
}

int cmd_grading_table1(Run& run) {
  std::vector<double> ps{2.0, 0.5, 2.0, 0.75};
  if (!run.opt.p_list.empty()) {
    ps = parse_number_list(run.opt.p_list);
    if (ps.size() != 4)
      throw ValidationError("--p for table1 needs exactly four values");
  }
  const bool reflected[4] = {false, true, true, false};
  const WageSpec wage = run.cfg.make_wage();

  Table t{{"family", "shape", "h_monotonicity", "h_curvature", "lambda_order",
           "best_cuts"},
          {}};
  json rows = json::array();
  for (int row = 0; row < 4; ++row) {
    const Distribution d = reflected[row]
                               ? Distribution::reflected_power(ps[row])
                               : Distribution::power(ps[row]);
    const HClassification cls = classify_h(d);
    const MarginalEffects effects = expected_marginal_effects(
        d, run.cfg.n, LambdaPolicy::prefer_closed_form, run.tol);
    const GradingSearchResult best = optimize_grading(
        d, wage, run.cfg.n, SearchMode::structured, run.tol);
    const std::string order = lambda_order_string(effects.lambdas);
    t.add_row({reflected[row] ? "reflected_power" : "power",
               format_fixed(ps[row]), name_of(cls.monotonicity),
               name_of(cls.curvature), order, best.best.to_string()});
    json r;
    r["family"] = reflected[row] ? "reflected_power" : "power";
    r["shape"] = ps[row];
    r["h_monotonicity"] = name_of(cls.monotonicity);
    r["h_curvature"] = name_of(cls.curvature);
    r["lambda_order"] = order;
    r["best_cuts"] = best.best.to_string();
    rows.push_back(r);
  }
  run.emit("table1.tsv", t);

  json metrics;
  metrics["rows"] = rows;
  run.finish(true, metrics);
  return 0;
}

int cmd_budget_allocate(Run& run) {
  if (!(run.opt.B > 0.0)) throw ValidationError("--B must be positive");
  if (!(run.opt.r > 0.0) || !(run.opt.r < 1.0))
    throw ValidationError("--r must lie in (0, 1)");
  const Distribution d = run.cfg.make_distribution();
  const BudgetAllocation alloc = budget_allocation_power_utility(
      d, run.cfg.n, run.opt.B, run.opt.r, run.tol);

  Table t{{"rank", "prize"}, {}};
  for (int i = 0; i < run.cfg.n; ++i)
    t.add_row({std::to_string(i + 1), format_fixed(alloc.prizes[i])});
  run.emit("budget.tsv", t,
           {"budget: " + format_fixed(alloc.budget),
            "utility_exponent: " + format_fixed(alloc.r),
            "top_prize: " + format_full(alloc.v1)});

  json metrics;
  metrics["prizes"] = alloc.prizes.values();
  metrics["v1"] = alloc.v1;
  metrics["ratios"] = alloc.ratios;
  metrics["r"] = alloc.r;
  metrics["B"] = alloc.budget;
  run.finish(true, metrics);
  return 0;
}

int cmd_screening_sweep(Run& run) {
  double p = run.opt.p;
  if (p <= 0.0) {
    const Distribution d = run.cfg.make_distribution();
    if (d.family() != Family::power)
      throw ValidationError(
          "screening sweep needs --p or a power distribution in the "
          "scenario");
    p = d.shape();
  }
  const ScreeningSweep sweep = screening_optimize(p, run.cfg.n);

  Table t{{"k", "z", "mu1", "mu0", "variance", "denominator", "objective"},
          {}};
  for (const auto& rep : sweep.table)
    t.add_row({std::to_string(rep.k), format_fixed(rep.z),
               format_fixed(rep.mu1), format_fixed(rep.mu0),
               format_fixed(rep.variance), format_fixed(rep.denominator),
               format_fixed(rep.objective)});
  run.emit(
      "screening.tsv", t,
      {"k_star: " + std::to_string(sweep.k_star),
       "denominator is the quoted effort normalizer, taken as a definition"});

  json metrics;
  metrics["p"] = p;
  metrics["k_star"] = sweep.k_star;
  json objectives = json::array();
  for (const auto& rep : sweep.table) objectives.push_back(rep.objective);
  metrics["objectives"] = objectives;
  run.finish(true, metrics);
  return 0;
}

int cmd_verify_equilibrium(Run& run) {
  const Distribution d = run.cfg.make_distribution();
  const PrizeVector v = resolve_prizes(run, d);

  std::vector<double> types(64), deviations(256);
  for (int j = 0; j < 64; ++j) types[j] = (j + 1) / 65.0;
  for (int k = 0; k < 256; ++k) deviations[k] = (k + 1) / 256.0;
  const RegretReport regret =
      best_response_regret(d, v, types, deviations, run.tol);
  const double spread = v[0] - v[v.n() - 1];
  const double bound = std::max(1e-4 * spread, 1e-12);
  const bool regret_pass = regret.max_regret <= bound;

  const double theta = run.cfg.theta.value_or(0.5);
  const std::int64_t samples = run.cfg.samples.value_or(100000);
  std::uint64_t seed = 1;
  if (run.opt.seed >= 0)
    seed = static_cast<std::uint64_t>(run.opt.seed);
  else if (run.cfg.seed)
    seed = *run.cfg.seed;
  const RankFrequencies ranks =
      monte_carlo_ranks(d, run.cfg.n, theta, samples, seed);
  const ChiSquare chi = chi_square_statistic(ranks.counts, ranks.analytic);
  const double threshold = chi_square_quantile(chi.degrees_of_freedom, 0.999);
  const bool mc_pass = chi.statistic <= threshold;

  Table t{{"metric", "value"}, {}};
  t.add_row({"max_regret", format_fixed(regret.max_regret)});
  t.add_row({"regret_bound", format_fixed(bound)});
  t.add_row({"regret_pass", regret_pass ? "true" : "false"});
  t.add_row({"worst_type", format_fixed(regret.worst_type)});
  t.add_row({"worst_deviation", format_fixed(regret.worst_deviation)});
  t.add_row({"chi_square", format_fixed(chi.statistic)});
  t.add_row({"chi_square_threshold", format_fixed(threshold)});
  t.add_row({"chi_square_bins", std::to_string(chi.bins)});
  t.add_row({"mc_pass", mc_pass ? "true" : "false"});
  run.emit("regret.tsv", t,
           {"max_regret_full: " + format_full(regret.max_regret),
            "type_grid: 64 points, deviation_grid: 256 points",
            "samples: " + std::to_string(samples) +
                ", seed: " + std::to_string(seed) +
                ", theta: " + format_full(theta)});

  Table rt{{"rank", "count", "empirical", "analytic"}, {}};
  for (int i = 0; i < run.cfg.n; ++i)
    rt.add_row({std::to_string(i + 1), std::to_string(ranks.counts[i]),
                format_fixed(ranks.empirical[i]),
                format_fixed(ranks.analytic[i])});
  run.emit("ranks.tsv", rt);

  json metrics;
  metrics["max_regret"] = regret.max_regret;
  metrics["regret_bound"] = bound;
  metrics["regret_pass"] = regret_pass;
  metrics["chi_square"] = chi.statistic;
  metrics["chi_square_threshold"] = threshold;
  metrics["mc_pass"] = mc_pass;
  metrics["theta"] = theta;
  metrics["samples"] = samples;
  metrics["seed"] = seed;
  run.finish(regret_pass && mc_pass, metrics);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"rank-order contest analysis"};
  app.require_subcommand(1);

  Options opt;
  int command = -1;
  enum Cmd {
    kDistClassify,
    kEffortLambdas,
    kEffortCurve,
    kEffortCompare,
    kGradingWages,
    kGradingOptimize,
    kGradingTable1,
    kBudgetAllocate,
    kScreeningSweep,
    kVerifyEquilibrium,
  };

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("scenario", opt.scenario_path, "scenario file")
        ->required();
    sub->add_option("--out", opt.out_dir, "artifact directory");
    sub->add_option("--tol", opt.tol, "quadrature tolerance override");
    sub->add_flag("--quiet", opt.quiet, "suppress stdout tables");
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* desc,
                  Cmd cmd) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->callback([&command, cmd] { command = cmd; });
    add_common(sub);
    return sub;
  };

  CLI::App* dist = app.add_subcommand("dist", "ability distribution reports");
  dist->require_subcommand(1);
  leaf(dist, "classify", "shape of h and tail conditions", kDistClassify);

  CLI::App* effort = app.add_subcommand("effort", "equilibrium effort");
  effort->require_subcommand(1);
  leaf(effort, "lambdas", "expected marginal prize effects", kEffortLambdas);
  leaf(effort, "curve", "equilibrium effort curve", kEffortCurve);
  leaf(effort, "compare", "two prize vectors side by side", kEffortCompare);

  CLI::App* grading = app.add_subcommand("grading", "grading contests");
  grading->require_subcommand(1);
  leaf(grading, "wages", "rank-revealing grade values", kGradingWages);
  CLI::App* gopt = leaf(grading, "optimize", "best grading contest",
                        kGradingOptimize);
  gopt->add_option("--mode", opt.mode, "search mode")
      ->check(CLI::IsMember({"brute", "structured"}));
  CLI::App* gtab = leaf(grading, "table1", "four-family shape summary",
                        kGradingTable1);
  gtab->add_option("--p", opt.p_list,
                   "comma list of four shapes (default 2,0.5,2,0.75)");

  CLI::App* budget = app.add_subcommand("budget", "prize budget design");
  budget->require_subcommand(1);
  CLI::App* balloc = leaf(budget, "allocate", "effort-maximizing split",
                          kBudgetAllocate);
  balloc->add_option("--r", opt.r, "utility exponent in (0,1)")->required();
  balloc->add_option("--B", opt.B, "total budget")->required();

  CLI::App* screening = app.add_subcommand("screening", "prize-count design");
  screening->require_subcommand(1);
  CLI::App* ssweep = leaf(screening, "sweep", "objective for every k",
                          kScreeningSweep);
  ssweep->add_option("--p", opt.p, "power family shape (>= 1)");

  CLI::App* verify = app.add_subcommand("verify", "independent checks");
  verify->require_subcommand(1);
  CLI::App* veq = leaf(verify, "equilibrium", "regret and rank frequencies",
                       kVerifyEquilibrium);
  veq->add_option("--seed", opt.seed, "Monte Carlo seed override");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  const char* names[] = {"dist classify",    "effort lambdas",
                         "effort curve",     "effort compare",
                         "grading wages",    "grading optimize",
                         "grading table1",   "budget allocate",
                         "screening sweep",  "verify equilibrium"};
  try {
    Run run = make_run(opt, names[command]);
    switch (command) {
      case kDistClassify: return cmd_dist_classify(run);
      case kEffortLambdas: return cmd_effort_lambdas(run);
      case kEffortCurve: return cmd_effort_curve(run);
      case kEffortCompare: return cmd_effort_compare(run);
      case kGradingWages: return cmd_grading_wages(run);
      case kGradingOptimize: return cmd_grading_optimize(run);
      case kGradingTable1: return cmd_grading_table1(run);
      case kBudgetAllocate: return cmd_budget_allocate(run);
      case kScreeningSweep: return cmd_screening_sweep(run);
      case kVerifyEquilibrium: return cmd_verify_equilibrium(run);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 64;
}

}  // namespace contests

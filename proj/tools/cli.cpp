#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "irsroute/double_irs.hpp"
#include "irsroute/scatter.hpp"
#include "irsroute/solver.hpp"
#include "irsroute/sweep.hpp"

namespace irsroute::cli {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) {
      throw std::invalid_argument("bad numeric value '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string path_text(const std::vector<int>& nodes) {
  std::string t;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i) t += "-";
    t += std::to_string(nodes[i]);
  }
  return t;
}

struct SceneArgs {
  std::string path;

  void add(CLI::App* app) {
    app->add_option("--scenario", path,
                    "scenario JSON file (default: bundled scenario)");
  }
  Scenario load() const {
    return path.empty() ? bundled_scenario() : load_scenario(path);
  }
};

BeamMode parse_mode(const std::string& name) { return beam_mode_from_string(name); }

int cmd_solve(const SceneArgs& scene, const std::string& mode, int q, int q_max,
              bool admission, bool no_separation, bool no_timing,
              const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const Scenario s = scene.load();
  SolveOptions opts;
  opts.q = q;
  opts.mode = parse_mode(mode);
  opts.enforce_separation = !no_separation;
  RoutingSolution sol = solve_with_escalation(s, opts, q_max);
  if (!sol.feasible && admission) {
    opts.q = std::max(q, q_max);
    sol = max_admission(s, opts);
  }
  if (no_timing) sol.runtime_ms = 0.0;
  if (!out_path.empty()) save_solution(sol, out_path);

  if (sol.feasible || (admission && !sol.admitted.empty())) {
    out << "objective_db " << fmt(sol.objective_db()) << "\n";
    out << "q " << sol.q << "\n";
    out << "admitted " << sol.admitted.size() << " of " << sol.num_users
        << "\n";
    for (const UserRoute& r : sol.routes) {
      out << "user " << r.user << " path " << path_text(r.nodes) << " gain_db "
          << fmt(to_db(r.model_gain)) << "\n";
    }
    return kOk;
  }
  err << "infeasible: largest clique " << sol.largest_clique << " of "
      << sol.num_users << " users up to Q=" << q_max << "\n";
  return kInfeasible;
}

int cmd_evaluate(const SceneArgs& scene, const std::string& solution_path,
                 std::uint64_t seed, int realizations,
                 const std::string& alpha_text, const std::string& out_path,
                 std::ostream& out) {
  const Scenario s = scene.load();
  const RoutingSolution sol = load_solution(solution_path);
  std::vector<double> alphas = parse_values(alpha_text);
  if (alphas.empty()) alphas.push_back(s.alpha);
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");

  std::string text =
      "user,alpha,cascade_db,overall_db,interference_db,sir_db\n";
  for (const UserRoute& r : sol.routes) {
    const ScatterReport rep =
        evaluate_scatter(s, sol, r.user, alphas, seed, realizations);
    for (size_t a = 0; a < alphas.size(); ++a) {
      const double own = to_db(rep.overall[a]);
      const double intf = to_db(rep.interference[a]);
      text += std::to_string(r.user) + "," + fmt(alphas[a]) + "," +
              fmt(to_db(rep.cascade)) + "," + fmt(own) + "," + fmt(intf) +
              "," + fmt(own - intf) + "\n";
    }
  }
  write_text(out_path, text, out);
  return kOk;
}

int cmd_sweep(const SceneArgs& scene, const std::string& axis,
              const std::string& values, const std::string& schemes, int q,
              std::uint64_t seed, int realizations, bool no_timing,
              const std::string& out_path, std::ostream& out) {
  const Scenario s = scene.load();
  SweepConfig cfg;
  cfg.axis = sweep_axis_from_string(axis);
  cfg.values = parse_values(values);
  cfg.schemes = split_list(schemes);
  cfg.q = q;
  cfg.seed = seed;
  cfg.realizations = realizations;
  cfg.record_timing = !no_timing;
  write_text(out_path, run_sweep(s, cfg).to_csv(), out);
  return kOk;
}

int cmd_validate(const SceneArgs& scene, const std::string& solution_path,
                 std::ostream& out, std::ostream& err) {
  const Scenario s = scene.load();
  const RoutingSolution sol = load_solution(solution_path);
  const auto violations = validate_routing(s, compute_los_map(s), sol);
  if (violations.empty()) {
    out << "ok\n";
    return kOk;
  }
  for (const Violation& v : violations) {
    err << "violation " << v.constraint << ": " << v.detail << "\n";
  }
  return kViolation;
}

int cmd_example(int m_side, const std::string& alpha_text, std::uint64_t seed,
                int realizations, const std::string& out_path,
                std::ostream& out) {
  std::vector<double> alphas = parse_values(alpha_text);
  const Scenario s = double_irs_scenario(m_side);
  const DoubleIrsReport rep = double_irs_example(s, alphas, seed, realizations);
  std::string text = "alpha,example1_db,example2_db,gap_db,not_converged\n";
  for (size_t a = 0; a < rep.alphas.size(); ++a) {
    const double e1 = to_db(rep.example1[a]);
    const double e2 = to_db(rep.example2);
    text += fmt(rep.alphas[a]) + "," + fmt(e1) + "," + fmt(e2) + "," +
            fmt(e2 - e1) + "," + std::to_string(rep.not_converged) + "\n";
  }
  write_text(out_path, text, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multi-IRS beam routing"};
  app.require_subcommand(1);

  SceneArgs scene;
  std::string mode = "discrete";
  int q = 5;
  int q_max = 40;
  std::uint64_t seed = 1;
  int realizations = 100;
  std::string out_path;
  std::string solution_path;
  std::string alpha_text;
  std::string axis = "m0";
  std::string values;
  std::string schemes;
  bool admission = false;
  bool no_separation = false;
  bool no_timing = false;

  auto* solve = app.add_subcommand("solve", "route all users");
  scene.add(solve);
  solve->add_option("--mode", mode, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}));
  solve->add_option("--q", q, "candidate paths per user")
      ->check(CLI::PositiveNumber);
  solve->add_option("--q-max", q_max, "largest Q tried when infeasible")
      ->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "solution JSON file");
  solve->add_flag("--admission", admission,
                  "admit the largest feasible user subset when infeasible");
  solve->add_flag("--no-separation", no_separation,
                  "drop the path separation constraint");
  solve->add_flag("--no-timing", no_timing, "write zero runtimes");

  auto* evaluate = app.add_subcommand("evaluate", "scattered propagation");
  scene.add(evaluate);
  evaluate->add_option("--solution", solution_path, "solution JSON file")
      ->required();
  evaluate->add_option("--seed", seed, "random seed");
  evaluate->add_option("--realizations", realizations, "Monte-Carlo draws")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--alpha", alpha_text,
                       "comma-separated path-loss exponents");
  evaluate->add_option("--out", out_path, "CSV output file");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep");
  scene.add(sweep);
  sweep->add_option("--sweep-axis", axis, "m0, b0, alpha or q")
      ->check(CLI::IsMember({"m0", "b0", "alpha", "q"}));
  sweep->add_option("--sweep-values", values, "comma-separated values");
  sweep->add_option("--schemes", schemes, "comma-separated scheme names");
  sweep->add_option("--q", q, "candidate paths per user")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "random seed");
  sweep->add_option("--realizations", realizations, "Monte-Carlo draws")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV output file");
  sweep->add_flag("--no-timing", no_timing, "write zero runtimes");

  auto* validate = app.add_subcommand("validate", "check a solution");
  scene.add(validate);
  validate->add_option("--solution", solution_path, "solution JSON file")
      ->required();

  RandomScenarioParams params;
  bool random = false;
  auto* gen = app.add_subcommand("gen", "write a scenario");
  gen->add_flag("--random", random, "seeded random layout");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--num-irs", params.num_irs, "number of IRSs")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--num-users", params.num_users, "number of users")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--box", params.box, "side of the placement box in m")
      ->check(CLI::PositiveNumber);
  gen->add_option("--height", params.height, "ceiling height in m")
      ->check(CLI::PositiveNumber);
  gen->add_option("--threshold", params.los_threshold, "LoS range in m")
      ->check(CLI::PositiveNumber);
  gen->add_option("--m0", params.m0, "elements per IRS side")
      ->check(CLI::PositiveNumber);
  gen->add_option("--b0", params.b0, "codebook bits per IRS side")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--out", out_path, "scenario JSON file");

  int m_side = 20;
  std::string example_alpha = "2,2.5,3,3.5,4,4.5,5";
  std::string which;
  auto* example = app.add_subcommand("example", "double-IRS comparison");
  example->add_option("name", which, "example name")
      ->required()
      ->check(CLI::IsMember({"double-irs"}));
  example->add_option("--m0", m_side, "elements per IRS side")
      ->check(CLI::PositiveNumber);
  example->add_option("--alpha", example_alpha,
                      "comma-separated path-loss exponents");
  example->add_option("--seed", seed, "random seed");
  example->add_option("--realizations", realizations, "Monte-Carlo draws")
      ->check(CLI::PositiveNumber);
  example->add_option("--out", out_path, "CSV output file");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1),
                                args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kError;
  }

  try {
    if (*solve) {
      return cmd_solve(scene, mode, q, q_max, admission, no_separation,
                       no_timing, out_path, out, err);
    }
    if (*evaluate) {
      return cmd_evaluate(scene, solution_path, seed, realizations, alpha_text,
                          out_path, out);
    }
    if (*sweep) {
      return cmd_sweep(scene, axis, values, schemes, q, seed, realizations,
                       no_timing, out_path, out);
    }
    if (*validate) return cmd_validate(scene, solution_path, out, err);
    if (*gen) {
      const Scenario s =
          random ? random_scenario(params, seed) : bundled_scenario();
      write_text(out_path, scenario_to_json_text(s), out);
      return kOk;
    }
    if (*example) {
      return cmd_example(m_side, example_alpha, seed, realizations, out_path,
                         out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace irsroute::cli

#include "irsroute/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "irsroute/scatter.hpp"

namespace irsroute {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double parse_number(const std::string& field) {
  if (field == "nan") return kNan;
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  size_t used = 0;
  const double v = std::stod(field, &used);
  if (used != field.size()) throw std::invalid_argument("bad number " + field);
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

SweepRow row_from_solution(double value, const std::string& scheme,
                           const RoutingSolution& sol, int num_users) {
  SweepRow row;
  row.axis_value = value;
  row.scheme = scheme;
  row.feasible = sol.feasible;
  row.objective_db = sol.feasible ? sol.objective_db() : kNan;
  row.user_gain_db.assign(num_users, kNan);
  for (const UserRoute& r : sol.routes) {
    row.user_gain_db[r.user - 1] = to_db(r.model_gain);
  }
  row.runtime_ms = sol.runtime_ms;
  return row;
}

}  // namespace

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kM0:
      return "m0";
    case SweepAxis::kB0:
      return "b0";
    case SweepAxis::kAlpha:
      return "alpha";
    case SweepAxis::kQ:
      return "q";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "m0" || name == "M0") return SweepAxis::kM0;
  if (name == "b0") return SweepAxis::kB0;
  if (name == "alpha") return SweepAxis::kAlpha;
  if (name == "q" || name == "Q") return SweepAxis::kQ;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::vector<std::string> default_schemes(SweepAxis axis) {
  if (axis == SweepAxis::kAlpha) return {"cascade", "overall", "interference"};
  return {"proposed", "continuous", "sequential", "min-pathloss", "max-cpb"};
}

std::string SweepTable::header() const {
  std::string h = "axis_value,scheme,objective_db";
  for (int k = 1; k <= num_users; ++k) {
    h += ",user" + std::to_string(k) + "_gain_db";
  }
  h += ",feasible,runtime_ms,seed";
  return h;
}

std::string SweepTable::to_csv() const {
  std::string out = header() + "\n";
  for (const SweepRow& r : rows) {
    out += format_number(r.axis_value) + "," + r.scheme + "," +
           format_number(r.objective_db);
    for (double g : r.user_gain_db) out += "," + format_number(g);
    out += std::string(",") + (r.feasible ? "1" : "0") + "," +
           format_number(r.runtime_ms) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

SweepTable SweepTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty table");
  const auto head = split(line, ',');
  if (head.size() < 6 || head[0] != "axis_value" || head[1] != "scheme" ||
      head[2] != "objective_db") {
    throw std::invalid_argument("unexpected table header");
  }
  SweepTable t;
  t.num_users = static_cast<int>(head.size()) - 6;
  if (t.header() != line) throw std::invalid_argument("unexpected table header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != head.size()) {
      throw std::invalid_argument("row has " + std::to_string(f.size()) +
                                  " fields, expected " +
                                  std::to_string(head.size()));
    }
    SweepRow r;
    r.axis_value = parse_number(f[0]);
    r.scheme = f[1];
    r.objective_db = parse_number(f[2]);
    for (int k = 0; k < t.num_users; ++k) {
      r.user_gain_db.push_back(parse_number(f[3 + k]));
    }
    r.feasible = f[3 + t.num_users] == "1";
    r.runtime_ms = parse_number(f[4 + t.num_users]);
    r.seed = std::stoull(f[5 + t.num_users]);
    t.rows.push_back(r);
  }
  return t;
}

RoutingSolution run_scheme(const Scenario& s, const std::string& scheme,
                           int q) {
  if (scheme == "proposed" || scheme == "continuous") {
    SolveOptions opts;
    opts.q = q;
    opts.mode = scheme == "proposed" ? BeamMode::kDiscrete
                                     : BeamMode::kContinuous;
    RoutingSolution sol = solve_mbmh(s, opts);
    sol.scheme = scheme;
    return sol;
  }
  if (scheme == "sequential") {
    return benchmark_sequential(s, BeamMode::kDiscrete);
  }
  if (scheme == "min-pathloss") {
    return benchmark_min_pathloss(s, q, BeamMode::kDiscrete);
  }
  if (scheme == "max-cpb") return benchmark_max_cpb(s, q, BeamMode::kDiscrete);
  throw std::invalid_argument("unknown scheme '" + scheme + "'");
}

SweepTable run_sweep(const Scenario& s, const SweepConfig& config) {
  SweepTable table;
  table.num_users = s.num_users();
  const std::vector<std::string> schemes =
      config.schemes.empty() ? default_schemes(config.axis) : config.schemes;
  if (config.values.empty()) return table;

  if (config.axis == SweepAxis::kAlpha) {
    for (const std::string& sc : schemes) {
      if (sc != "cascade" && sc != "overall" && sc != "interference") {
        throw std::invalid_argument("scheme '" + sc +
                                    "' does not apply to the alpha axis");
      }
    }
    const auto start = std::chrono::steady_clock::now();
    SolveOptions opts;
    opts.q = config.q;
    const RoutingSolution sol = solve_mbmh(s, opts);
    const size_t n_alpha = config.values.size();
    std::vector<std::vector<double>> cascade(n_alpha,
                                             std::vector<double>(table.num_users, kNan));
    auto overall = cascade;
    auto interference = cascade;
    if (sol.feasible) {
      for (const UserRoute& r : sol.routes) {
        const ScatterReport rep = evaluate_scatter(
            s, sol, r.user, config.values, config.seed, config.realizations);
        for (size_t a = 0; a < n_alpha; ++a) {
          cascade[a][r.user - 1] = to_db(rep.cascade);
          overall[a][r.user - 1] = to_db(rep.overall[a]);
          interference[a][r.user - 1] = to_db(rep.interference[a]);
        }
      }
    }
    const double per_row =
        config.record_timing
            ? elapsed_ms(start) / static_cast<double>(n_alpha * schemes.size())
            : 0.0;
    for (size_t a = 0; a < n_alpha; ++a) {
      for (const std::string& sc : schemes) {
        SweepRow row;
        row.axis_value = config.values[a];
        row.scheme = sc;
        row.feasible = sol.feasible;
        row.user_gain_db = sc == "cascade"   ? cascade[a]
                           : sc == "overall" ? overall[a]
                                             : interference[a];
        row.objective_db = kNan;
        if (sol.feasible) {
          double agg = sc == "interference" ? -kInfiniteCost : kInfiniteCost;
          for (double v : row.user_gain_db) {
            if (std::isnan(v)) continue;
            agg = sc == "interference" ? std::max(agg, v) : std::min(agg, v);
          }
          row.objective_db = agg;
        }
        row.runtime_ms = per_row;
        row.seed = config.seed;
        table.rows.push_back(row);
      }
    }
    return table;
  }

  for (double value : config.values) {
    Scenario sc = s;
    int q = config.q;
    const int as_int = static_cast<int>(std::lround(value));
    if (std::abs(value - as_int) > 1e-9 || as_int < 0) {
      throw std::invalid_argument("axis value " + format_number(value) +
                                  " must be a non-negative integer");
    }
    switch (config.axis) {
      case SweepAxis::kM0:
        sc.m1 = sc.m2 = as_int;
        break;
      case SweepAxis::kB0:
        sc.b1 = sc.b2 = as_int;
        break;
      case SweepAxis::kQ:
        q = as_int;
        break;
      case SweepAxis::kAlpha:
        break;
    }
    sc.validate();
    for (const std::string& scheme : schemes) {
      const RoutingSolution sol = run_scheme(sc, scheme, q);
      SweepRow row = row_from_solution(value, scheme, sol, table.num_users);
      if (!config.record_timing) row.runtime_ms = 0.0;
      row.seed = config.seed;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace irsroute

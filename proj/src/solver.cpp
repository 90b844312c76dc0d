#include "irsroute/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "irsroute/yen.hpp"

namespace irsroute {

double RoutingSolution::objective_db() const {
  return feasible ? to_db(objective) : -kInfiniteCost;
}

const UserRoute* RoutingSolution::route_for(int user) const {
  for (const UserRoute& r : routes) {
    if (r.user == user) return &r;
  }
  return nullptr;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

bool searches_g0(const SolveOptions& opts) {
  return opts.mode == BeamMode::kContinuous && opts.continuous_on_g0 &&
         opts.weights == WeightModel::kChannel;
}

}  // namespace

std::vector<std::vector<CandidatePath>> candidate_paths(
    const Scenario& s, const LosMap& los, const BeamGainTable& table,
    const SolveOptions& opts) {
  if (opts.q < 1) throw std::invalid_argument("Q must be >= 1");
  const RoutingGraph g0 = build_g0(s, los, opts.mode);
  std::vector<std::vector<CandidatePath>> out(s.num_users());

  if (searches_g0(opts)) {
    const double m = static_cast<double>(s.elements());
    const double offset = std::log(m * m / s.n_b);
    for (int k = 1; k <= s.num_users(); ++k) {
      const auto paths = yen_k_shortest(g0.graph, 0, s.user_node(k), opts.q);
      for (size_t q = 0; q < paths.size(); ++q) {
        CandidatePath c;
        c.user = k;
        c.rank = static_cast<int>(q) + 1;
        c.is_virtual = paths[q].is_virtual;
        if (!c.is_virtual) {
          c.vertices = paths[q].vertices;
          c.nodes = paths[q].vertices;
          c.cost = offset + 2.0 * paths[q].cost;
        }
        out[k - 1].push_back(c);
      }
    }
    return out;
  }

  const LineGraph lg = build_line_graph(g0, table, s, opts.weights);
  for (int k = 1; k <= s.num_users(); ++k) {
    const auto paths =
        yen_k_shortest(lg.graph, lg.source, lg.user_vertex[k - 1], opts.q);
    for (size_t q = 0; q < paths.size(); ++q) {
      CandidatePath c;
      c.user = k;
      c.rank = static_cast<int>(q) + 1;
      c.is_virtual = paths[q].is_virtual;
      if (!c.is_virtual) {
        c.vertices = paths[q].vertices;
        c.nodes = lg.to_g0_path(c.vertices);
        c.cost = paths[q].cost;
      }
      out[k - 1].push_back(c);
    }
  }
  return out;
}

RoutingSolution assemble_solution(const Scenario& s, const LosMap& los,
                                  const BeamGainTable& table,
                                  const std::vector<int>& users,
                                  const std::vector<std::vector<int>>& paths) {
  RoutingSolution sol;
  sol.feasible = true;
  sol.mode = table.mode();
  sol.num_users = s.num_users();
  sol.admitted = users;
  sol.objective = kInfiniteCost;
  sol.cascade_objective = kInfiniteCost;
  for (size_t u = 0; u < users.size(); ++u) {
    UserRoute r = configure_route(s, los, table, users[u], paths[u]);
    sol.objective = std::min(sol.objective, r.model_gain);
    sol.cascade_objective = std::min(sol.cascade_objective, r.cascade_gain);
    sol.routes.push_back(std::move(r));
  }
  if (users.empty()) {
    sol.objective = 0.0;
    sol.cascade_objective = 0.0;
  }
  return sol;
}

RoutingSolution solve_mbmh(const Scenario& s, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, opts.mode);
  auto candidates = candidate_paths(s, los, table, opts);
  const int k_count = s.num_users();

  RoutingSolution sol;
  std::vector<int> users;
  std::vector<std::vector<int>> chosen;
  double weight = -kInfiniteCost;
  int largest = 0;
  long visited = 0;
  bool feasible = true;

  if (!opts.enforce_separation) {
    for (int k = 1; k <= k_count; ++k) {
      const CandidatePath& best = candidates[k - 1].front();
      if (best.is_virtual) {
        feasible = false;
        break;
      }
      ++largest;
      users.push_back(k);
      chosen.push_back(best.nodes);
      weight = std::max(weight, best.cost);
    }
  } else {
    const PathGraph gp(candidates, s, los, opts.hop_depth);
    const CliqueSearch cs = clique_enumerate(gp);
    largest = cs.largest_size;
    visited = cs.nodes_visited;
    feasible = cs.feasible;
    if (feasible) {
      for (int v : cs.best.members) {
        users.push_back(gp.path(v).user);
        chosen.push_back(gp.path(v).nodes);
      }
      weight = cs.best.max_weight;
    }
  }

  if (feasible && k_count > 0) {
    sol = assemble_solution(s, los, table, users, chosen);
    sol.clique_weight = weight;
  } else {
    sol.feasible = false;
    sol.mode = opts.mode;
    sol.num_users = k_count;
  }
  sol.q = opts.q;
  sol.largest_clique = largest;
  sol.clique_nodes = visited;
  sol.runtime_ms = elapsed_ms(start);
  return sol;
}

namespace {

// Calls `visit` on every r-subset of 1..n in lexicographic order until it
// returns false.
template <typename Visit>
void for_each_subset(int n, int r, Visit visit) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i + 1;
  while (true) {
    if (!visit(idx)) return;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i + 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int t = i + 1; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

RoutingSolution max_admission(const Scenario& s, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, opts.mode);
  const auto candidates = candidate_paths(s, los, table, opts);
  const PathGraph gp(candidates, s, los, opts.hop_depth);
  const int k_count = s.num_users();

  RoutingSolution sol;
  sol.mode = opts.mode;
  sol.num_users = k_count;
  long visited = 0;
  for (int r = k_count; r >= 1; --r) {
    bool found = false;
    CliqueSearch best;
    for_each_subset(k_count, r, [&](const std::vector<int>& subset) {
      const CliqueSearch cs = clique_enumerate(gp, subset);
      visited += cs.nodes_visited;
      if (cs.feasible &&
          (!found || cs.best.max_weight < best.best.max_weight)) {
        best = cs;
        found = true;
      }
      return true;
    });
    if (!found) continue;
    std::vector<int> users;
    std::vector<std::vector<int>> chosen;
    for (int v : best.best.members) {
      users.push_back(gp.path(v).user);
      chosen.push_back(gp.path(v).nodes);
    }
    sol = assemble_solution(s, los, table, users, chosen);
    sol.clique_weight = best.best.max_weight;
    sol.largest_clique = r;
    break;
  }
  sol.q = opts.q;
  sol.clique_nodes = visited;
  sol.runtime_ms = elapsed_ms(start);
  return sol;
}

RoutingSolution solve_with_escalation(const Scenario& s, SolveOptions opts,
                                      int q_max) {
  RoutingSolution sol = solve_mbmh(s, opts);
  while (!sol.feasible && opts.q * 2 <= q_max) {
    opts.q *= 2;
    sol = solve_mbmh(s, opts);
  }
  return sol;
}

}  // namespace irsroute

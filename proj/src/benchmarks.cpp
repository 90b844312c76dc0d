#include <chrono>

#include "irsroute/solver.hpp"
#include "irsroute/yen.hpp"

namespace irsroute {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

RoutingSolution benchmark_sequential(const Scenario& s, BeamMode mode) {
  const auto start = std::chrono::steady_clock::now();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, mode);
  const RoutingGraph g0 = build_g0(s, los, mode);
  const bool on_g0 = mode == BeamMode::kContinuous;
  LineGraph lg;
  if (!on_g0) lg = build_line_graph(g0, table, s);
  const Digraph& graph = on_g0 ? g0.graph : lg.graph;
  const std::vector<int> topo = *graph.topological_order();

  std::vector<char> removed(s.num_nodes(), 0);
  std::vector<int> users;
  std::vector<std::vector<int>> chosen;
  bool feasible = true;
  for (int k = 1; k <= s.num_users(); ++k) {
    PathMask mask;
    mask.blocked_vertex.assign(graph.num_vertices(), 0);
    for (int v = 0; v < graph.num_vertices(); ++v) {
      if (on_g0) {
        mask.blocked_vertex[v] = removed[v];
      } else {
        const auto& [i, j] = lg.label[v];
        mask.blocked_vertex[v] = (i > 0 && removed[i]) || removed[j];
      }
    }
    const int source = on_g0 ? 0 : lg.source;
    const int target = on_g0 ? s.user_node(k) : lg.user_vertex[k - 1];
    const WeightedPath p = dag_shortest_path(graph, topo, source, target, mask);
    if (p.is_virtual) {
      feasible = false;
      break;
    }
    const std::vector<int> nodes = on_g0 ? p.vertices : lg.to_g0_path(p.vertices);
    users.push_back(k);
    chosen.push_back(nodes);
    for (size_t n = 1; n < nodes.size(); ++n) {
      removed[nodes[n]] = 1;
      for (int nb : los.neighbors(nodes[n])) {
        if (nb != 0) removed[nb] = 1;
      }
    }
  }

  RoutingSolution sol;
  if (feasible) {
    sol = assemble_solution(s, los, table, users, chosen);
  } else {
    sol.mode = mode;
    sol.num_users = s.num_users();
  }
  sol.scheme = "sequential";
  sol.q = 1;
  sol.largest_clique = static_cast<int>(users.size());
  sol.runtime_ms = elapsed_ms(start);
  return sol;
}

RoutingSolution benchmark_min_pathloss(const Scenario& s, int q,
                                       BeamMode mode) {
  SolveOptions opts;
  opts.q = q;
  opts.mode = mode;
  opts.weights = WeightModel::kUnitCpb;
  RoutingSolution sol = solve_mbmh(s, opts);
  sol.scheme = "min-pathloss";
  return sol;
}

RoutingSolution benchmark_max_cpb(const Scenario& s, int q, BeamMode mode) {
  SolveOptions opts;
  opts.q = q;
  opts.mode = mode;
  opts.weights = WeightModel::kUnitPathloss;
  RoutingSolution sol = solve_mbmh(s, opts);
  sol.scheme = "max-cpb";
  return sol;
}

}  // namespace irsroute

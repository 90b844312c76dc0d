#include "irsroute/graphs.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <iomanip>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace irsroute {

void Digraph::add_edge(int from, int to, double weight) {
  if (from < 0 || to < 0 || from >= num_vertices() || to >= num_vertices()) {
    throw std::out_of_range("Digraph::add_edge: vertex out of range");
  }
  out_[from].push_back({from, to, weight});
  ++edge_count_;
}

std::vector<WeightedEdge> Digraph::edges() const {
  std::vector<WeightedEdge> all;
  for (const auto& list : out_) all.insert(all.end(), list.begin(), list.end());
  return all;
}

std::optional<double> Digraph::weight(int from, int to) const {
  for (const WeightedEdge& e : out_.at(from)) {
    if (e.to == to) return e.weight;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> Digraph::topological_order() const {
  const int n = num_vertices();
  std::vector<int> indegree(n, 0);
  for (const auto& list : out_) {
    for (const WeightedEdge& e : list) ++indegree[e.to];
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const WeightedEdge& e : out_[v]) {
      if (--indegree[e.to] == 0) ready.push(e.to);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

double path_cost(const Digraph& g, const std::vector<int>& path) {
  double total = 0.0;
  for (size_t n = 0; n + 1 < path.size(); ++n) {
    const auto w = g.weight(path[n], path[n + 1]);
    if (!w) {
      throw std::invalid_argument("path_cost: missing edge " +
                                  std::to_string(path[n]) + " -> " +
                                  std::to_string(path[n + 1]));
    }
    total += *w;
  }
  return total;
}

void write_edge_list(const Digraph& g, std::ostream& out) {
  out << "# from to weight\n";
  out << std::setprecision(17);
  for (const WeightedEdge& e : g.edges()) {
    out << e.from << ' ' << e.to << ' ' << e.weight << '\n';
  }
}

RoutingGraph build_g0(const Scenario& s, const LosMap& los, BeamMode mode) {
  RoutingGraph g0;
  g0.mode = mode;
  g0.weighted = mode == BeamMode::kContinuous;
  g0.graph = Digraph(s.num_nodes());
  const double m = static_cast<double>(s.elements());
  for (int i = 0; i < s.num_nodes(); ++i) {
    for (int j = 0; j < s.num_nodes(); ++j) {
      if (!is_forward_link(s, los, i, j)) continue;
      const double w =
          g0.weighted ? std::log(s.distance(i, j) / (m * std::sqrt(s.beta)))
                      : 0.0;
      g0.graph.add_edge(i, j, w);
    }
  }
  return g0;
}

const char* to_string(WeightModel model) {
  switch (model) {
    case WeightModel::kChannel:
      return "channel";
    case WeightModel::kUnitCpb:
      return "unit-cpb";
    case WeightModel::kUnitPathloss:
      return "unit-pathloss";
  }
  return "?";
}

std::vector<int> LineGraph::to_g0_path(const std::vector<int>& path) const {
  std::vector<int> nodes;
  for (int v : path) {
    const auto& [i, j] = label.at(v);
    if (i < 0) {
      if (nodes.empty() || nodes.back() != j) nodes.push_back(j);
      continue;
    }
    if (nodes.empty()) nodes.push_back(i);
    if (nodes.back() != i) {
      throw std::invalid_argument("line-graph path is not contiguous");
    }
    nodes.push_back(j);
  }
  return nodes;
}

std::vector<int> LineGraph::from_g0_path(const std::vector<int>& nodes) const {
  std::vector<int> path;
  if (nodes.empty()) return path;
  path.push_back(source);
  for (size_t n = 0; n + 1 < nodes.size(); ++n) {
    path.push_back(vertex_of_edge.at({nodes[n], nodes[n + 1]}));
  }
  const int last = nodes.back();
  for (int v : user_vertex) {
    if (label[v].second == last) path.push_back(v);
  }
  return path;
}

LineGraph build_line_graph(const RoutingGraph& g0, const BeamGainTable& table,
                           const Scenario& s, WeightModel model) {
  LineGraph lg;
  const std::vector<WeightedEdge> e0 = g0.graph.edges();
  const int k_count = s.num_users();
  const int n = static_cast<int>(e0.size()) + k_count + 1;
  lg.graph = Digraph(n);
  lg.label.assign(n, {-1, 0});
  lg.source = 0;
  lg.label[0] = {-1, 0};
  for (size_t e = 0; e < e0.size(); ++e) {
    const int v = static_cast<int>(e) + 1;
    lg.label[v] = {e0[e].from, e0[e].to};
    lg.vertex_of_edge[{e0[e].from, e0[e].to}] = v;
  }
  for (int k = 1; k <= k_count; ++k) {
    const int v = static_cast<int>(e0.size()) + k;
    lg.label[v] = {-1, s.user_node(k)};
    lg.user_vertex.push_back(v);
  }

  const bool unit_loss = model == WeightModel::kUnitPathloss;
  const double beta = unit_loss ? 1.0 : s.beta;
  auto dist = [&](int i, int j) { return unit_loss ? 1.0 : s.distance(i, j); };
  const double n_b = static_cast<double>(s.n_b);

  for (size_t e = 0; e < e0.size(); ++e) {
    const int v = static_cast<int>(e) + 1;
    const int i = e0[e].from;
    const int j = e0[e].to;
    if (i == 0) {
      lg.graph.add_edge(lg.source, v,
                        std::log(dist(0, j) / (std::sqrt(beta) * n_b)));
    }
    if (s.is_user(j)) {
      lg.graph.add_edge(v, lg.user_vertex[s.user_index(j) - 1],
                        std::log(dist(i, j) / std::sqrt(beta)));
      continue;
    }
    for (const WeightedEdge& next : g0.graph.out_edges(j)) {
      const int r = next.to;
      if (!table.contains(i, j, r)) {
        throw std::runtime_error("gain table has no entry for triple (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ", " + std::to_string(r) + ")");
      }
      const double amp =
          model == WeightModel::kUnitCpb ? 1.0 : table.at(i, j, r).amplitude;
      if (!(amp > 0.0)) {
        throw std::runtime_error("zero reflection amplitude for triple (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ", " + std::to_string(r) + ")");
      }
      lg.graph.add_edge(v, lg.vertex_of_edge.at({j, r}),
                        std::log(dist(i, j) * dist(j, r) / (beta * amp * amp)));
    }
  }
  return lg;
}

namespace {

// Nodes within `depth` LoS hops of `start`, relaying only through IRSs.
std::vector<int> hop_distances(const LosMap& los, const Scenario& s, int start,
                               int depth) {
  std::vector<int> dist(los.size(), -1);
  std::deque<int> frontier{start};
  dist[start] = 0;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    if (dist[u] == depth) continue;
    if (u != start && !s.is_irs(u)) continue;
    for (int v : los.neighbors(u)) {
      if (v == 0 || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      frontier.push_back(v);
    }
  }
  return dist;
}

}  // namespace

bool neighbor_disjoint(const std::vector<int>& a, const std::vector<int>& b,
                       const LosMap& los, const Scenario& s, int hop_depth) {
  if (hop_depth < 1) throw std::invalid_argument("hop_depth must be >= 1");
  for (size_t x = 1; x < a.size(); ++x) {
    const int u = a[x];
    std::vector<int> reach;
    if (hop_depth > 1) reach = hop_distances(los, s, u, hop_depth);
    for (size_t y = 1; y < b.size(); ++y) {
      const int v = b[y];
      if (u == v) return false;
      if (hop_depth == 1 ? los(u, v) : reach[v] > 0) return false;
    }
  }
  return true;
}

std::vector<int> CandidatePath::irs() const {
  if (nodes.size() < 2) return {};
  return std::vector<int>(nodes.begin() + 1, nodes.end() - 1);
}

PathGraph::PathGraph(std::vector<std::vector<CandidatePath>> candidates,
                     const Scenario& s, const LosMap& los, int hop_depth) {
  num_users_ = static_cast<int>(candidates.size());
  per_user_ = 0;
  for (const auto& list : candidates) {
    per_user_ = std::max(per_user_, static_cast<int>(list.size()));
  }
  for (int k = 0; k < num_users_; ++k) {
    auto& list = candidates[k];
    while (static_cast<int>(list.size()) < per_user_) {
      CandidatePath pad;
      pad.user = k + 1;
      list.push_back(pad);
    }
    for (int q = 0; q < per_user_; ++q) {
      list[q].user = k + 1;
      list[q].rank = q + 1;
      paths_.push_back(list[q]);
    }
  }
  const int n = num_vertices();
  adj_.assign(static_cast<size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u) {
    if (paths_[u].is_virtual) continue;
    for (int v = u + 1; v < n; ++v) {
      if (paths_[v].is_virtual || partition(u) == partition(v)) continue;
      if (neighbor_disjoint(paths_[u].nodes, paths_[v].nodes, los, s,
                            hop_depth)) {
        adj_[static_cast<size_t>(u) * n + v] = 1;
        adj_[static_cast<size_t>(v) * n + u] = 1;
      }
    }
  }
}

int PathGraph::num_edges() const {
  int count = 0;
  for (std::uint8_t a : adj_) count += a;
  return count / 2;
}

}  // namespace irsroute

#include "irsroute/yen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace irsroute {

WeightedPath dag_shortest_path(const Digraph& g, const std::vector<int>& topo,
                               int source, int target, const PathMask& mask) {
  const int n = g.num_vertices();
  auto blocked = [&](int v) {
    return !mask.blocked_vertex.empty() && mask.blocked_vertex[v];
  };
  auto edge_blocked = [&](int from, int to) {
    return std::find(mask.blocked_edges.begin(), mask.blocked_edges.end(),
                     std::make_pair(from, to)) != mask.blocked_edges.end();
  };
  std::vector<double> dist(n, kInfiniteCost);
  std::vector<int> parent(n, -1);
  std::vector<char> reached(n, 0);
  if (blocked(source) || blocked(target)) return {};
  reached[source] = 1;
  dist[source] = 0.0;
  for (int u : topo) {
    if (!reached[u]) continue;
    for (const WeightedEdge& e : g.out_edges(u)) {
      if (blocked(e.to) || edge_blocked(u, e.to)) continue;
      const double nd = dist[u] + e.weight;
      if (!reached[e.to] || nd < dist[e.to]) {
        reached[e.to] = 1;
        dist[e.to] = nd;
        parent[e.to] = u;
      }
    }
  }
  if (!reached[target]) return {};
  WeightedPath path;
  for (int v = target; v != -1; v = parent[v]) {
    path.vertices.push_back(v);
    if (v == source) break;
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  path.cost = path_cost(g, path.vertices);
  path.is_virtual = false;
  return path;
}

namespace {

struct ByCostThenSequence {
  bool operator()(const WeightedPath& a, const WeightedPath& b) const {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.vertices < b.vertices;
  }
};

}  // namespace

std::vector<WeightedPath> yen_k_shortest(const Digraph& g, int source,
                                         int target, int q) {
  if (source == target) {
    throw std::invalid_argument("yen_k_shortest: source equals target");
  }
  if (q < 1) throw std::invalid_argument("yen_k_shortest: Q must be >= 1");
  const auto topo = g.topological_order();
  if (!topo) throw std::invalid_argument("yen_k_shortest: graph has a cycle");

  std::vector<WeightedPath> found;
  std::set<WeightedPath, ByCostThenSequence> pool;
  std::set<std::vector<int>> seen;

  WeightedPath first = dag_shortest_path(g, *topo, source, target, {});
  if (!first.is_virtual) {
    found.push_back(first);
    seen.insert(first.vertices);
  }
  while (!found.empty() && static_cast<int>(found.size()) < q) {
    const std::vector<int>& last = found.back().vertices;
    for (size_t i = 0; i + 1 < last.size(); ++i) {
      const int spur = last[i];
      const std::vector<int> root(last.begin(), last.begin() + i + 1);
      PathMask mask;
      mask.blocked_vertex.assign(g.num_vertices(), 0);
      for (size_t r = 0; r < i; ++r) mask.blocked_vertex[root[r]] = 1;
      for (const WeightedPath& p : found) {
        if (p.vertices.size() > i + 1 &&
            std::equal(root.begin(), root.end(), p.vertices.begin())) {
          mask.blocked_edges.emplace_back(p.vertices[i], p.vertices[i + 1]);
        }
      }
      const WeightedPath tail =
          dag_shortest_path(g, *topo, spur, target, mask);
      if (tail.is_virtual) continue;
      WeightedPath candidate;
      candidate.vertices = root;
      candidate.vertices.insert(candidate.vertices.end(),
                                tail.vertices.begin() + 1, tail.vertices.end());
      if (seen.count(candidate.vertices)) continue;
      candidate.cost = path_cost(g, candidate.vertices);
      candidate.is_virtual = false;
      seen.insert(candidate.vertices);
      pool.insert(candidate);
    }
    if (pool.empty()) break;
    found.push_back(*pool.begin());
    pool.erase(pool.begin());
  }
  while (static_cast<int>(found.size()) < q) found.push_back(WeightedPath{});
  return found;
}

}  // namespace irsroute

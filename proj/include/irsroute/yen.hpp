#ifndef IRSROUTE_YEN_HPP
#define IRSROUTE_YEN_HPP

#include <vector>

#include "irsroute/graphs.hpp"

namespace irsroute {

struct WeightedPath {
  std::vector<int> vertices;
  double cost = kInfiniteCost;
  bool is_virtual = true;
};

struct PathMask {
  std::vector<char> blocked_vertex;
  std::vector<std::pair<int, int>> blocked_edges;
};

// Single-source shortest path on a DAG by relaxation in topological order,
// skipping masked vertices and edges. Returns a virtual path when the target
// is unreachable.
WeightedPath dag_shortest_path(const Digraph& g, const std::vector<int>& topo,
                               int source, int target, const PathMask& mask);

// Q loopless paths in non-decreasing cost order (ties broken by vertex
// sequence), padded with virtual +inf entries when fewer exist.
std::vector<WeightedPath> yen_k_shortest(const Digraph& g, int source,
                                         int target, int q);

}  // namespace irsroute

#endif  // IRSROUTE_YEN_HPP

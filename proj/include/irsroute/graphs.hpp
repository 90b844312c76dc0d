#ifndef IRSROUTE_GRAPHS_HPP
#define IRSROUTE_GRAPHS_HPP

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "irsroute/beamforming.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

struct WeightedEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : out_(n) {}

  int num_vertices() const { return static_cast<int>(out_.size()); }
  int num_edges() const { return edge_count_; }
  void add_edge(int from, int to, double weight);
  const std::vector<WeightedEdge>& out_edges(int v) const { return out_.at(v); }
  std::vector<WeightedEdge> edges() const;
  // Weight of edge (from, to); nullopt when absent.
  std::optional<double> weight(int from, int to) const;
  // Kahn's algorithm with a min-heap, so the order is unique. nullopt if
  // the graph has a cycle.
  std::optional<std::vector<int>> topological_order() const;

 private:
  std::vector<std::vector<WeightedEdge>> out_;
  int edge_count_ = 0;
};

// Sum of edge weights along a vertex sequence, accumulated in order.
double path_cost(const Digraph& g, const std::vector<int>& path);

void write_edge_list(const Digraph& g, std::ostream& out);

struct RoutingGraph {
  Digraph graph;  // vertices are node ids
  BeamMode mode = BeamMode::kDiscrete;
  bool weighted = false;
};

// G0. In continuous mode each edge carries ln(d / (M sqrt(beta))).
RoutingGraph build_g0(const Scenario& s, const LosMap& los, BeamMode mode);

enum class WeightModel {
  kChannel,       // true distances and beam gains
  kUnitCpb,       // every reflection amplitude treated as 1
  kUnitPathloss,  // every hop treated as beta / d^2 = 1
};

const char* to_string(WeightModel model);

struct LineGraph {
  Digraph graph;
  // For vertex v: the G0 edge (i, j) it stands for, or (-1, node) for the
  // source and user terminal vertices.
  std::vector<std::pair<int, int>> label;
  std::map<std::pair<int, int>, int> vertex_of_edge;
  int source = 0;
  std::vector<int> user_vertex;  // index k-1 -> vertex of user k

  // Node sequence in G0 of a line-graph path from the source.
  std::vector<int> to_g0_path(const std::vector<int>& path) const;
  std::vector<int> from_g0_path(const std::vector<int>& nodes) const;
};

LineGraph build_line_graph(const RoutingGraph& g0, const BeamGainTable& table,
                           const Scenario& s,
                           WeightModel model = WeightModel::kChannel);

// Neighbor-disjointness of two node sequences starting at the BS. With
// hop_depth q > 1 two nodes conflict when connected by at most q LoS hops
// relayed only through IRSs.
bool neighbor_disjoint(const std::vector<int>& a, const std::vector<int>& b,
                       const LosMap& los, const Scenario& s, int hop_depth = 1);

struct CandidatePath {
  int user = 0;  // 1..K
  int rank = 0;  // 1..Q
  std::vector<int> vertices;  // in the graph the path was found in
  std::vector<int> nodes;     // node sequence BS .. user
  double cost = kInfiniteCost;
  bool is_virtual = true;

  std::vector<int> irs() const;
};

class PathGraph {
 public:
  PathGraph() = default;
  // `candidates[k-1]` lists user k's candidates; lists are padded with
  // virtual entries to the common length.
  PathGraph(std::vector<std::vector<CandidatePath>> candidates,
            const Scenario& s, const LosMap& los, int hop_depth = 1);

  int num_users() const { return num_users_; }
  int per_user() const { return per_user_; }
  int num_vertices() const { return num_users_ * per_user_; }
  int vertex(int user, int rank) const {
    return (user - 1) * per_user_ + (rank - 1);
  }
  int partition(int v) const { return v / per_user_ + 1; }
  const CandidatePath& path(int v) const { return paths_.at(v); }
  double weight(int v) const { return paths_.at(v).cost; }
  bool adjacent(int u, int v) const {
    return adj_[static_cast<size_t>(u) * num_vertices() + v] != 0;
  }
  int num_edges() const;

 private:
  int num_users_ = 0;
  int per_user_ = 0;
  std::vector<CandidatePath> paths_;
  std::vector<std::uint8_t> adj_;
};

}  // namespace irsroute

#endif  // IRSROUTE_GRAPHS_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "irsroute/clique.hpp"
#include "irsroute/evaluation.hpp"
#include "irsroute/graphs.hpp"
#include "irsroute/yen.hpp"
#include "test_support.hpp"

namespace irsroute {
namespace {

using testing::add_node;
using testing::hand_scenario;
using testing::relative_close;

TEST(Digraph, EdgesWeightsAndTopologicalOrder) {
  Digraph g(4);
  g.add_edge(2, 3, 1.0);
  g.add_edge(0, 2, -1.0);
  g.add_edge(0, 1, 0.5);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_EQ(*g.weight(0, 2), -1.0);
  EXPECT_FALSE(g.weight(1, 2).has_value());
  EXPECT_EQ(*g.topological_order(), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(path_cost(g, {0, 2, 3}), 0.0);
  EXPECT_THROW(path_cost(g, {0, 3}), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 9, 1.0), std::out_of_range);
  g.add_edge(3, 0, 1.0);
  EXPECT_FALSE(g.topological_order().has_value());
  std::ostringstream out;
  write_edge_list(g, out);
  EXPECT_FALSE(out.str().empty());
}

TEST(RoutingGraph, BundledEdgeCountMatchesIndependentRecount) {
  const Scenario s = bundled_scenario();
  const LosMap los = compute_los_map(s);
  const RoutingGraph g0 = build_g0(s, los, BeamMode::kDiscrete);
  int expected = 0;
  for (int i = 0; i < s.num_nodes(); ++i) {
    for (int j = 0; j < s.num_nodes(); ++j) {
      if (i == j || !los(i, j)) continue;
      const bool bs_to_irs = i == 0 && s.is_irs(j);
      const bool irs_to_user = s.is_irs(i) && s.is_user(j);
      const bool irs_outward = s.is_irs(i) && s.is_irs(j) &&
                               s.distance(0, j) > s.distance(0, i);
      if (bs_to_irs || irs_to_user || irs_outward) {
        ++expected;
        EXPECT_TRUE(g0.graph.weight(i, j).has_value()) << i << "->" << j;
      }
    }
  }
  EXPECT_EQ(g0.graph.num_edges(), expected);
  EXPECT_TRUE(g0.graph.topological_order().has_value());
  EXPECT_FALSE(g0.weighted);
}

TEST(RoutingGraph, EquidistantIrssGetNoEdge) {
  Scenario s = hand_scenario();
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0));
  add_node(s, NodeKind::kIrs, Vec3(-2, 3, 0), Vec3(1, -0.2, 0));
  add_node(s, NodeKind::kIrs, Vec3(2, 3, 0), Vec3(-1, -0.2, 0));
  add_node(s, NodeKind::kUser, Vec3(0, 6, 0));
  const LosMap los = compute_los_map(s);
  ASSERT_TRUE(los(1, 2));
  const RoutingGraph g0 = build_g0(s, los, BeamMode::kDiscrete);
  EXPECT_FALSE(g0.graph.weight(1, 2).has_value());
  EXPECT_FALSE(g0.graph.weight(2, 1).has_value());
  EXPECT_TRUE(g0.graph.weight(0, 1).has_value());
}

TEST(RoutingGraph, ContinuousEdgeWeights) {
  const Scenario s = bundled_scenario();
  const LosMap los = compute_los_map(s);
  const RoutingGraph g0 = build_g0(s, los, BeamMode::kContinuous);
  EXPECT_TRUE(g0.weighted);
  for (const WeightedEdge& e : g0.graph.edges()) {
    const double want =
        std::log(s.distance(e.from, e.to) / (s.elements() * std::sqrt(s.beta)));
    EXPECT_NEAR(e.weight, want, 1e-12);
  }
}

class BundledLineGraph : public ::testing::Test {
 protected:
  void SetUp() override {
    s = bundled_scenario();
    los = compute_los_map(s);
    table = build_gain_table(s, los, BeamMode::kDiscrete);
    g0 = build_g0(s, los, BeamMode::kDiscrete);
    lg = build_line_graph(g0, table, s);
  }
  Scenario s;
  LosMap los;
  BeamGainTable table;
  RoutingGraph g0;
  LineGraph lg;
};

TEST_F(BundledLineGraph, PathMappingIsABijection) {
  std::set<std::vector<int>> images;
  for (int k = 1; k <= s.num_users(); ++k) {
    for (const auto& nodes : testing::simple_routes(s, los, s.user_node(k))) {
      const std::vector<int> p = lg.from_g0_path(nodes);
      ASSERT_EQ(p.size(), nodes.size() + 1);
      EXPECT_EQ(p.front(), lg.source);
      EXPECT_EQ(p.back(), lg.user_vertex[k - 1]);
      EXPECT_EQ(lg.to_g0_path(p), nodes);
      EXPECT_TRUE(images.insert(p).second);
      // Every consecutive pair is an edge of the line graph.
      EXPECT_NO_THROW(path_cost(lg.graph, p));
    }
  }
  EXPECT_GE(images.size(), 8u);
}

// Compares line-graph path costs with a direct evaluation of
// beta^(N+1) N_B prod(A^2) / prod(d^2) on every simple route.
int check_cost_identity(const Scenario& s) {
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, BeamMode::kDiscrete);
  const LineGraph lg =
      build_line_graph(build_g0(s, los, BeamMode::kDiscrete), table, s);
  int checked = 0;
  for (int k = 1; k <= s.num_users(); ++k) {
    for (const auto& nodes : testing::simple_routes(s, los, s.user_node(k))) {
      double gain = s.n_b;
      for (size_t x = 0; x + 1 < nodes.size(); ++x) {
        gain *= s.beta / std::pow(s.distance(nodes[x], nodes[x + 1]), 2);
      }
      for (size_t x = 1; x + 1 < nodes.size(); ++x) {
        gain *= std::pow(table.at(nodes[x - 1], nodes[x], nodes[x + 1]).amplitude, 2);
      }
      const double cost = path_cost(lg.graph, lg.from_g0_path(nodes));
      EXPECT_TRUE(relative_close(cost, -std::log(gain), 1e-9))
          << cost << " vs " << -std::log(gain);
      ++checked;
    }
  }
  return checked;
}

TEST(LineGraph, PathCostIsNegativeLogOfChannelGain) {
  int checked = check_cost_identity(bundled_scenario());
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    checked += check_cost_identity(
        random_scenario(testing::small_params(seed), seed));
  }
  EXPECT_GE(checked, 20);
}

TEST(LineGraph, SingleHopWeightAlgebra) {
  Scenario s = hand_scenario(4);
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0));
  add_node(s, NodeKind::kIrs, Vec3(1, 3, 0), Vec3(-0.2, -1, 0));
  add_node(s, NodeKind::kUser, Vec3(-1, 1.5, 0));
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, BeamMode::kDiscrete);
  const LineGraph lg =
      build_line_graph(build_g0(s, los, BeamMode::kDiscrete), table, s);
  const std::vector<int> p = lg.from_g0_path({0, 1, 2});
  const double a = table.at(0, 1, 2).amplitude;
  const double d01 = s.distance(0, 1);
  const double d12 = s.distance(1, 2);
  const double want = std::log(d01 / (std::sqrt(s.beta) * s.n_b)) +
                      std::log(d01 * d12 / (s.beta * a * a)) +
                      std::log(d12 / std::sqrt(s.beta));
  EXPECT_NEAR(path_cost(lg.graph, p), want, 1e-12);
  EXPECT_NEAR(want, -std::log(s.beta * s.beta * s.n_b * a * a /
                              (d01 * d01 * d12 * d12)),
              1e-12);
}

TEST(LineGraph, UnitWeightModels) {
  const Scenario s = bundled_scenario();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, BeamMode::kDiscrete);
  const RoutingGraph g0 = build_g0(s, los, BeamMode::kDiscrete);
  const LineGraph cpb = build_line_graph(g0, table, s, WeightModel::kUnitCpb);
  const LineGraph loss =
      build_line_graph(g0, table, s, WeightModel::kUnitPathloss);
  const std::vector<int> nodes{0, 13, 7, 17};
  const double d = s.distance(0, 13) * s.distance(13, 7) * s.distance(7, 17);
  EXPECT_NEAR(path_cost(cpb.graph, cpb.from_g0_path(nodes)),
              std::log(d * d / (std::pow(s.beta, 3) * s.n_b)), 1e-9);
  const double a1 = table.at(0, 13, 7).amplitude;
  const double a2 = table.at(13, 7, 17).amplitude;
  EXPECT_NEAR(path_cost(loss.graph, loss.from_g0_path(nodes)),
              -std::log(s.n_b * a1 * a1 * a2 * a2), 1e-9);
}

TEST(NeighborDisjoint, Rules) {
  Scenario s = hand_scenario();
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0));
  add_node(s, NodeKind::kIrs, Vec3(-3, 2, 0), Vec3(1, -1, 0));  // 1
  add_node(s, NodeKind::kIrs, Vec3(3, 2, 0), Vec3(-1, -1, 0));  // 2 sees 1
  add_node(s, NodeKind::kIrs, Vec3(-3, -2, 0), Vec3(1, 1, 0));  // 3
  add_node(s, NodeKind::kIrs, Vec3(3, -2.5, 0), Vec3(0, 1, 0));  // 4
  add_node(s, NodeKind::kUser, Vec3(-5, 4, 0));
  add_node(s, NodeKind::kUser, Vec3(5, 4, 0));
  s.los_threshold = 6.5;
  const LosMap los = compute_los_map(s);
  ASSERT_TRUE(los(1, 2));
  const std::vector<int> a{0, 1, 5};
  const std::vector<int> b{0, 2, 6};
  EXPECT_FALSE(neighbor_disjoint(a, a, los, s));
  EXPECT_FALSE(neighbor_disjoint(a, b, los, s));  // interior IRSs see each other
  LosMap cut = los;
  cut.set(1, 2, false);
  cut.set(1, 6, false);
  cut.set(2, 5, false);
  EXPECT_TRUE(neighbor_disjoint(a, b, cut, s));
  EXPECT_TRUE(neighbor_disjoint(b, a, cut, s));
  // Two LoS hops through an IRS conflict only at depth 2.
  cut.set(1, 3, true);
  cut.set(3, 2, true);
  EXPECT_TRUE(neighbor_disjoint(a, b, cut, s, 1));
  EXPECT_FALSE(neighbor_disjoint(a, b, cut, s, 2));
  EXPECT_THROW(neighbor_disjoint(a, b, cut, s, 0), std::invalid_argument);
}

// --- Yen -----------------------------------------------------------------

TEST(Yen, ChainPadsWithVirtualPaths) {
  Digraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  const auto paths = yen_k_shortest(g, 0, 2, 3);
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_FALSE(paths[0].is_virtual);
  EXPECT_EQ(paths[0].vertices, (std::vector<int>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(paths[0].cost, 2.0);
  for (int q : {1, 2}) {
    EXPECT_TRUE(paths[q].is_virtual);
    EXPECT_EQ(paths[q].cost, kInfiniteCost);
  }
}

TEST(Yen, DiamondPicksCheaperBranch) {
  Digraph g(4);  // 0 source, 1 = a, 2 = b, 3 = t
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 3, 1.0);
  g.add_edge(0, 2, 1.0);
  g.add_edge(2, 3, 2.0);
  const auto one = yen_k_shortest(g, 0, 3, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].vertices, (std::vector<int>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(one[0].cost, 2.0);
  const auto two = yen_k_shortest(g, 0, 3, 2);
  EXPECT_EQ(two[1].vertices, (std::vector<int>{0, 2, 3}));
  EXPECT_DOUBLE_EQ(two[1].cost, 3.0);
}

TEST(Yen, RejectsBadInput) {
  Digraph g(3);
  g.add_edge(0, 1, 1.0);
  EXPECT_THROW(yen_k_shortest(g, 0, 0, 1), std::invalid_argument);
  EXPECT_THROW(yen_k_shortest(g, 0, 1, 0), std::invalid_argument);
  g.add_edge(1, 0, 1.0);
  EXPECT_THROW(yen_k_shortest(g, 0, 1, 1), std::invalid_argument);
}

TEST(Yen, UnreachableTargetGivesOnlyVirtualPaths) {
  Digraph g(3);
  g.add_edge(0, 1, 1.0);
  const auto paths = yen_k_shortest(g, 0, 2, 2);
  for (const auto& p : paths) EXPECT_TRUE(p.is_virtual);
}

TEST(Yen, DagShortestPathHonoursMask) {
  Digraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 3, 1.0);
  g.add_edge(0, 2, 5.0);
  g.add_edge(2, 3, -1.0);
  const auto topo = *g.topological_order();
  PathMask none;
  none.blocked_vertex.assign(4, 0);
  EXPECT_EQ(dag_shortest_path(g, topo, 0, 3, none).vertices,
            (std::vector<int>{0, 1, 3}));
  PathMask mask = none;
  mask.blocked_vertex[1] = 1;
  EXPECT_EQ(dag_shortest_path(g, topo, 0, 3, mask).vertices,
            (std::vector<int>{0, 2, 3}));
  mask.blocked_edges.push_back({2, 3});
  EXPECT_TRUE(dag_shortest_path(g, topo, 0, 3, mask).is_virtual);
}

TEST(Yen, MatchesExhaustiveEnumerationOnRandomDags) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const Digraph g = testing::random_dag(seed, n, 0.45);
    const auto all = testing::all_paths_sorted(g, 0, n - 1);
    const int q = 1 + static_cast<int>(seed % 7);
    const auto got = yen_k_shortest(g, 0, n - 1, q);
    ASSERT_EQ(static_cast<int>(got.size()), q);
    for (int x = 0; x < q; ++x) {
      if (x < static_cast<int>(all.size())) {
        ASSERT_FALSE(got[x].is_virtual) << "seed " << seed << " rank " << x;
        EXPECT_NEAR(got[x].cost, all[x].cost, 1e-12) << "seed " << seed;
        EXPECT_EQ(got[x].vertices, all[x].vertices) << "seed " << seed;
      } else {
        EXPECT_TRUE(got[x].is_virtual) << "seed " << seed;
      }
    }
  }
}

// --- path graph and clique search ----------------------------------------

// K users with Q single-IRS candidates each. IRS (k, q) has node id
// 1 + (k-1) Q + (q-1); `conflict` marks IRS pairs with LoS between them.
struct SyntheticPathGraph {
  Scenario s;
  LosMap los;
  std::vector<std::vector<CandidatePath>> candidates;
};

SyntheticPathGraph synthetic(int k_count, int q_count,
                             const std::vector<std::vector<double>>& cost,
                             const std::vector<std::pair<int, int>>& conflicts) {
  SyntheticPathGraph out;
  Scenario& s = out.s;
  s = hand_scenario();
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0));
  for (int i = 0; i < k_count * q_count; ++i) {
    add_node(s, NodeKind::kIrs, Vec3(3.0 * i, 5, 0), -Vec3::UnitY());
  }
  for (int k = 0; k < k_count; ++k) {
    add_node(s, NodeKind::kUser, Vec3(3.0 * k, 10, 0));
  }
  out.los = LosMap(s.num_nodes());
  for (auto [a, b] : conflicts) out.los.set(a, b, true);
  out.candidates.resize(k_count);
  for (int k = 1; k <= k_count; ++k) {
    for (int q = 1; q <= q_count; ++q) {
      CandidatePath c;
      const double w = cost[k - 1][q - 1];
      c.is_virtual = std::isinf(w);
      c.cost = w;
      if (!c.is_virtual) {
        c.nodes = {0, 1 + (k - 1) * q_count + (q - 1), s.user_node(k)};
      }
      out.candidates[k - 1].push_back(c);
    }
  }
  return out;
}

struct TupleScan {
  bool feasible = false;
  double best = kInfiniteCost;
};

TupleScan brute_force_cliques(const PathGraph& gp) {
  TupleScan out;
  const int k_count = gp.num_users();
  std::vector<int> pick(k_count, 1);
  while (true) {
    bool ok = true;
    double worst = -kInfiniteCost;
    for (int a = 0; a < k_count && ok; ++a) {
      const int va = gp.vertex(a + 1, pick[a]);
      if (gp.path(va).is_virtual) ok = false;
      worst = std::max(worst, gp.weight(va));
      for (int b = a + 1; b < k_count && ok; ++b) {
        ok = gp.adjacent(va, gp.vertex(b + 1, pick[b]));
      }
    }
    if (ok) {
      out.feasible = true;
      out.best = std::min(out.best, worst);
    }
    int pos = 0;
    while (pos < k_count && ++pick[pos] > gp.per_user()) pick[pos++] = 1;
    if (pos == k_count) break;
  }
  return out;
}

TEST(PathGraph, StructureAndSymmetry) {
  const auto sp = synthetic(3, 2, {{1, 2}, {3, kInfiniteCost}, {5, 6}},
                            {{1, 3}, {2, 6}});
  const PathGraph gp(sp.candidates, sp.s, sp.los);
  EXPECT_EQ(gp.num_vertices(), 3 * 2);
  for (int u = 0; u < gp.num_vertices(); ++u) {
    for (int v = 0; v < gp.num_vertices(); ++v) {
      EXPECT_EQ(gp.adjacent(u, v), gp.adjacent(v, u));
      if (gp.partition(u) == gp.partition(v) || gp.path(u).is_virtual) {
        EXPECT_FALSE(gp.adjacent(u, v));
      }
    }
  }
  EXPECT_FALSE(gp.adjacent(gp.vertex(1, 1), gp.vertex(2, 1)));  // IRS 1 - 3
  EXPECT_TRUE(gp.adjacent(gp.vertex(1, 1), gp.vertex(3, 1)));
  EXPECT_FALSE(gp.adjacent(gp.vertex(1, 2), gp.vertex(3, 2)));  // IRS 2 - 6
}

TEST(PathGraph, CandidatesOfOneUserNeverAdjacentOnBundled) {
  const Scenario s = bundled_scenario();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, BeamMode::kDiscrete);
  const LineGraph lg =
      build_line_graph(build_g0(s, los, BeamMode::kDiscrete), table, s);
  std::vector<std::vector<CandidatePath>> cands(s.num_users());
  for (int k = 1; k <= s.num_users(); ++k) {
    for (const WeightedPath& p :
         yen_k_shortest(lg.graph, lg.source, lg.user_vertex[k - 1], 5)) {
      CandidatePath c;
      c.is_virtual = p.is_virtual;
      c.cost = p.cost;
      if (!p.is_virtual) c.nodes = lg.to_g0_path(p.vertices);
      cands[k - 1].push_back(c);
    }
  }
  const PathGraph gp(cands, s, los);
  EXPECT_EQ(gp.num_vertices(), 4 * 5);
  for (int u = 0; u < gp.num_vertices(); ++u) {
    for (int v = 0; v < gp.num_vertices(); ++v) {
      if (gp.partition(u) == gp.partition(v)) {
        EXPECT_FALSE(gp.adjacent(u, v));
      }
    }
  }
  EXPECT_GT(gp.num_edges(), 0);
}

TEST(Clique, SinglePartitionPicksLowestWeight) {
  const auto sp = synthetic(1, 4, {{3, 1.5, 2, kInfiniteCost}}, {});
  const PathGraph gp(sp.candidates, sp.s, sp.los);
  const CliqueSearch c = clique_enumerate(gp);
  ASSERT_TRUE(c.feasible);
  EXPECT_EQ(c.best.members, (std::vector<int>{gp.vertex(1, 2)}));
  EXPECT_EQ(c.best.max_weight, 1.5);
}

TEST(Clique, TwoFourCliquesPickSmallerMaximum) {
  // Users 2-4 have a blocked second candidate; user 1 has two that both
  // complete a 4-clique with the first candidates of the others.
  const double inf = kInfiniteCost;
  const auto sp =
      synthetic(4, 2, {{7, 4}, {5, inf}, {6, inf}, {3, inf}}, {});
  const PathGraph gp(sp.candidates, sp.s, sp.los);
  EXPECT_EQ(brute_force_cliques(gp).best, 6.0);
  const CliqueSearch c = clique_enumerate(gp);
  ASSERT_TRUE(c.feasible);
  EXPECT_EQ(c.best.max_weight, 6.0);
  EXPECT_EQ(c.best.members,
            (std::vector<int>{gp.vertex(1, 2), gp.vertex(2, 1), gp.vertex(3, 1),
                              gp.vertex(4, 1)}));
  EXPECT_EQ(c.largest_size, 4);
}

TEST(Clique, InfeasibleReportsLargestPrefix) {
  // Every candidate of user 3 conflicts with user 1's only candidate.
  const auto sp = synthetic(3, 1, {{1}, {1}, {1}}, {{1, 3}});
  const PathGraph gp(sp.candidates, sp.s, sp.los);
  const CliqueSearch c = clique_enumerate(gp);
  EXPECT_FALSE(c.feasible);
  EXPECT_EQ(c.largest_size, 2);
  const CliqueSearch sub = clique_enumerate(gp, {2, 3});
  EXPECT_TRUE(sub.feasible);
}

TEST(Clique, MatchesTupleScanOnRandomKPartiteGraphs) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int feasible_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int k_count = 1 + trial % 4;
    const int q_count = 1 + (trial / 4) % 6;
    std::vector<std::vector<double>> cost(k_count);
    for (auto& row : cost) {
      for (int q = 0; q < q_count; ++q) {
        // Coarse weights so ties occur.
        row.push_back(unit(rng) < 0.1 ? kInfiniteCost
                                      : std::floor(unit(rng) * 6.0));
      }
    }
    std::vector<std::pair<int, int>> conflicts;
    const int n_irs = k_count * q_count;
    for (int a = 1; a <= n_irs; ++a) {
      for (int b = a + 1; b <= n_irs; ++b) {
        if (unit(rng) < 0.35) conflicts.push_back({a, b});
      }
    }
    const auto sp = synthetic(k_count, q_count, cost, conflicts);
    const PathGraph gp(sp.candidates, sp.s, sp.los);
    const TupleScan want = brute_force_cliques(gp);
    const CliqueSearch got = clique_enumerate(gp);
    ASSERT_EQ(got.feasible, want.feasible) << "trial " << trial;
    if (!want.feasible) continue;
    ++feasible_cases;
    EXPECT_EQ(got.best.max_weight, want.best) << "trial " << trial;
    ASSERT_EQ(static_cast<int>(got.best.members.size()), k_count);
    double worst = -kInfiniteCost;
    for (int a = 0; a < k_count; ++a) {
      EXPECT_EQ(gp.partition(got.best.members[a]), a + 1);
      worst = std::max(worst, gp.weight(got.best.members[a]));
      for (int b = a + 1; b < k_count; ++b) {
        EXPECT_TRUE(gp.adjacent(got.best.members[a], got.best.members[b]));
      }
    }
    EXPECT_EQ(worst, got.best.max_weight);
  }
  EXPECT_GT(feasible_cases, 100);
}

}  // namespace
}  // namespace irsroute

#include <gtest/gtest.h>

#include <cmath>

#include "irsroute/evaluation.hpp"
#include "irsroute/solver.hpp"
#include "test_support.hpp"

namespace irsroute {
namespace {

using testing::add_node;
using testing::hand_scenario;
using testing::relative_close;

// BS -> IRS -> IRS -> user with every hop 5 m long.
Scenario two_hop_layout() {
  Scenario s = hand_scenario(10, 32);
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0), Vec3::UnitY());
  add_node(s, NodeKind::kIrs, Vec3(0, 5, 0), Vec3(1, -1, 0));
  add_node(s, NodeKind::kIrs, Vec3(5, 5, 0), Vec3(-1, 1, 0));
  add_node(s, NodeKind::kUser, Vec3(5, 10, 0), -Vec3::UnitY());
  s.validate();
  return s;
}

Scenario one_hop_layout() {
  Scenario s = hand_scenario(10, 32);
  add_node(s, NodeKind::kBs, Vec3(0, 0, 0), Vec3::UnitY());
  add_node(s, NodeKind::kIrs, Vec3(0, 5, 0), Vec3(1, -1, 0));
  add_node(s, NodeKind::kUser, Vec3(5, 5, 0), -Vec3::UnitX());
  s.validate();
  return s;
}

TEST(Cascade, ContinuousTwoIrsMatchesHandValue) {
  const Scenario s = two_hop_layout();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table(BeamMode::kContinuous);
  const UserRoute r = configure_route(s, los, table, 1, {0, 1, 2, 3});
  const double expected =
      std::pow(s.beta, 3) * 32.0 * std::pow(100.0, 4) / std::pow(5.0, 6);
  EXPECT_TRUE(relative_close(r.cascade_gain, expected, 1e-9));
  EXPECT_TRUE(relative_close(r.model_gain, expected, 1e-9));
  EXPECT_TRUE(relative_close(gain_ceiling(s, r.nodes), expected, 1e-12));
  EXPECT_NEAR(r.cost, -std::log(r.model_gain), 1e-9);
}

TEST(Cascade, ContinuousOneIrsMatchesHandValue) {
  const Scenario s = one_hop_layout();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table(BeamMode::kContinuous);
  const UserRoute r = configure_route(s, los, table, 1, {0, 1, 2});
  const double expected =
      std::pow(s.beta, 2) * 32.0 * std::pow(100.0, 2) / std::pow(5.0, 4);
  EXPECT_TRUE(relative_close(r.cascade_gain, expected, 1e-9));
}

TEST(Cascade, ContinuousChannelIsRealAndPositive) {
  for (const Scenario& s : {one_hop_layout(), two_hop_layout()}) {
    const LosMap los = compute_los_map(s);
    const BeamGainTable table(BeamMode::kContinuous);
    std::vector<int> nodes;
    for (int n = 0; n < s.num_nodes(); ++n) nodes.push_back(n);
    const Complex h =
        effective_channel(s, los, nodes, route_beams(s, los, table, nodes));
    EXPECT_GT(h.real(), 0.0);
    EXPECT_NEAR(h.imag(), 0.0, 1e-9 * h.real());
  }
}

TEST(Cascade, DiscreteEqualsClosedFormWithRealizedAmplitudes) {
  std::vector<Scenario> scenarios{bundled_scenario()};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    scenarios.push_back(random_scenario(testing::small_params(seed), seed));
  }
  int checked = 0;
  for (const Scenario& s : scenarios) {
    const RoutingSolution sol = max_admission(s, SolveOptions{});
    if (!sol.feasible) continue;
    for (const UserRoute& r : sol.routes) {
      std::vector<double> amps;
      for (const HopBeam& h : r.hops) amps.push_back(h.amplitude);
      EXPECT_TRUE(relative_close(
          r.cascade_gain, closed_form_gain(s, r.nodes, amps, r.bs_amplitude),
          1e-9));
      EXPECT_LE(r.cascade_gain, gain_ceiling(s, r.nodes) * (1 + 1e-9));
      EXPECT_LE(r.model_gain, gain_ceiling(s, r.nodes) * (1 + 1e-9));
      ++checked;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Cascade, BundledFirstHopsMakeModelAndCascadeAgree) {
  const Scenario s = bundled_scenario();
  const RoutingSolution sol = solve_mbmh(s, SolveOptions{});
  ASSERT_TRUE(sol.feasible);
  for (const UserRoute& r : sol.routes) {
    EXPECT_TRUE(relative_close(r.cascade_gain, r.model_gain, 1e-9))
        << "user " << r.user;
  }
}

TEST(Cascade, UnconfiguredIrsNeverBeatsTheMatchedBeam) {
  for (const Scenario& s : {one_hop_layout(), two_hop_layout()}) {
    const LosMap los = compute_los_map(s);
    const BeamGainTable table(BeamMode::kContinuous);
    std::vector<int> nodes;
    for (int n = 0; n < s.num_nodes(); ++n) nodes.push_back(n);
    const PathBeams best = route_beams(s, los, table, nodes);
    PathBeams flat = best;
    for (ComplexVector& p : flat.passive) p = ComplexVector::Ones(p.size());
    EXPECT_LT(effective_gain(s, los, nodes, flat),
              effective_gain(s, los, nodes, best));
  }
}

TEST(Cascade, RejectsMalformedRoutes) {
  const Scenario s = two_hop_layout();
  const LosMap los = compute_los_map(s);
  const BeamGainTable table(BeamMode::kContinuous);
  EXPECT_THROW(configure_route(s, los, table, 1, {0, 3}), ContractViolation);
  EXPECT_THROW(configure_route(s, los, table, 1, {1, 2, 3}), ContractViolation);
  EXPECT_THROW(closed_form_gain(s, {0, 1, 2, 3}, {1.0}, 1.0),
               ContractViolation);
  PathBeams beams = route_beams(s, los, table, {0, 1, 2, 3});
  beams.passive.pop_back();
  EXPECT_THROW(effective_channel(s, los, {0, 1, 2, 3}, beams),
               ContractViolation);
}

}  // namespace
}  // namespace irsroute

#include "irsroute/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace irsroute {

std::vector<int> UserRoute::irs() const {
  if (nodes.size() < 2) return {};
  return std::vector<int>(nodes.begin() + 1, nodes.end() - 1);
}

namespace {

void check_path_shape(const Scenario& s, const std::vector<int>& nodes) {
  if (nodes.size() < 3 || nodes.front() != 0 || !s.is_user(nodes.back())) {
    throw ContractViolation(
        "a route must start at the BS, visit an IRS and end at a user");
  }
  for (size_t n = 1; n + 1 < nodes.size(); ++n) {
    if (!s.is_irs(nodes[n])) {
      throw ContractViolation("route interior node " +
                              std::to_string(nodes[n]) + " is not an IRS");
    }
  }
}

}  // namespace

PathBeams route_beams(const Scenario& s, const LosMap& los,
                      const BeamGainTable& table,
                      const std::vector<int>& nodes) {
  check_path_shape(s, nodes);
  PathBeams beams;
  const ActiveBeam active = active_beam(s, los, nodes[1], table.mode());
  beams.w = active.w * std::polar(1.0, phase_compensation(s, nodes));
  for (size_t n = 1; n + 1 < nodes.size(); ++n) {
    beams.passive.push_back(
        passive_beam_for(s, table, nodes[n - 1], nodes[n], nodes[n + 1]));
  }
  return beams;
}

UserRoute configure_route(const Scenario& s, const LosMap& los,
                          const BeamGainTable& table, int user,
                          const std::vector<int>& nodes) {
  check_path_shape(s, nodes);
  if (nodes.back() != s.user_node(user)) {
    throw ContractViolation("route for user " + std::to_string(user) +
                            " ends at node " + std::to_string(nodes.back()));
  }
  UserRoute route;
  route.user = user;
  route.nodes = nodes;
  const ActiveBeam active = active_beam(s, los, nodes[1], table.mode());
  route.bs_index = active.selection.index;
  route.bs_amplitude = active.selection.amplitude;
  route.phase = phase_compensation(s, nodes);

  PathBeams beams;
  beams.w = active.w * std::polar(1.0, route.phase);
  std::vector<double> amplitudes;
  for (size_t n = 1; n + 1 < nodes.size(); ++n) {
    const int i = nodes[n - 1];
    const int j = nodes[n];
    const int r = nodes[n + 1];
    HopBeam hop;
    hop.prev = i;
    hop.irs = j;
    hop.next = r;
    if (table.mode() == BeamMode::kDiscrete) {
      const GainEntry& e = table.at(i, j, r);
      hop.horizontal_index = e.horizontal_index;
      hop.vertical_index = e.vertical_index;
    }
    const ComplexVector theta = passive_beam_for(s, table, i, j, r);
    hop.amplitude = reflection_amplitude(compute_angles(s, i, j, r), theta,
                                         s.m1, s.m2, s.d_i, s.lambda);
    amplitudes.push_back(hop.amplitude);
    beams.passive.push_back(theta);
    route.hops.push_back(hop);
  }
  route.model_gain = closed_form_gain(s, nodes, amplitudes,
                                      std::sqrt(static_cast<double>(s.n_b)));
  route.cost = -std::log(route.model_gain);
  route.cascade_gain = effective_gain(s, los, nodes, beams);
  return route;
}

Complex effective_channel(const Scenario& s, const LosMap& los,
                          const std::vector<int>& nodes,
                          const PathBeams& beams) {
  check_path_shape(s, nodes);
  if (beams.passive.size() + 2 != nodes.size() || beams.w.size() != s.n_b) {
    throw ContractViolation("beams do not cover every hop of the route");
  }
  ComplexVector x = los_channel(s, los, nodes[0], nodes[1]) * beams.w;
  for (size_t n = 1; n + 1 < nodes.size(); ++n) {
    const ComplexVector& theta = beams.passive[n - 1];
    if (theta.size() != x.size()) {
      throw ContractViolation("passive beam length does not match the IRS");
    }
    x = los_channel(s, los, nodes[n], nodes[n + 1]) * theta.cwiseProduct(x);
  }
  return x(0);
}

double effective_gain(const Scenario& s, const LosMap& los,
                      const std::vector<int>& nodes, const PathBeams& beams) {
  return std::norm(effective_channel(s, los, nodes, beams));
}

double closed_form_gain(const Scenario& s, const std::vector<int>& nodes,
                        const std::vector<double>& amplitudes,
                        double bs_amplitude) {
  if (amplitudes.size() + 2 != nodes.size()) {
    throw ContractViolation("one amplitude per IRS is required");
  }
  double log_gain = 2.0 * std::log(bs_amplitude);
  for (size_t n = 0; n + 1 < nodes.size(); ++n) {
    const double d = s.distance(nodes[n], nodes[n + 1]);
    log_gain += std::log(s.beta) - 2.0 * std::log(d);
  }
  for (double a : amplitudes) log_gain += 2.0 * std::log(a);
  return std::exp(log_gain);
}

double gain_ceiling(const Scenario& s, const std::vector<int>& nodes) {
  const std::vector<double> full(nodes.size() - 2,
                                 static_cast<double>(s.elements()));
  return closed_form_gain(s, nodes, full,
                          std::sqrt(static_cast<double>(s.n_b)));
}

}  // namespace irsroute

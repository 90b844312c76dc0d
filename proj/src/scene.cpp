#include "irsroute/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace irsroute {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kBs:
      return "bs";
    case NodeKind::kIrs:
      return "irs";
    case NodeKind::kUser:
      return "user";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& name) {
  if (name == "bs") return NodeKind::kBs;
  if (name == "irs") return NodeKind::kIrs;
  if (name == "user") return NodeKind::kUser;
  throw ScenarioError("unknown node kind '" + name + "'");
}

int Scenario::num_irs() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const Node& n) { return n.kind == NodeKind::kIrs; }));
}

int Scenario::num_users() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const Node& n) { return n.kind == NodeKind::kUser; }));
}

double Scenario::distance(int i, int j) const {
  return (nodes.at(i).position - nodes.at(j).position).norm();
}

int Scenario::dimension(int id) const {
  switch (kind(id)) {
    case NodeKind::kBs:
      return n_b;
    case NodeKind::kIrs:
      return elements();
    case NodeKind::kUser:
      return 1;
  }
  return 0;
}

void Scenario::validate() const {
  auto fail = [](const std::string& msg) { throw ScenarioError(msg); };
  if (nodes.empty()) fail("scenario has no nodes");
  if (!(lambda > 0.0)) fail("lambda must be positive");
  if (!(beta > 0.0 && beta < 1.0)) fail("beta must lie in (0, 1)");
  if (!(d_a > 0.0) || !(d_i > 0.0)) fail("element spacing must be positive");
  if (n_b < 1) fail("n_b must be >= 1");
  if (m1 < 1 || m2 < 1) fail("m1 and m2 must be >= 1");
  if (b1 < 0 || b2 < 0 || b1 > 20 || b2 > 20) fail("codebook bits out of range");
  if (!(d0 > 0.0)) fail("d0 must be positive");
  if (!(los_threshold > 0.0)) fail("los_threshold must be positive");
  if (!(alpha > 0.0)) fail("alpha must be positive");

  const int j_count = num_irs();
  const int k_count = num_users();
  if (static_cast<int>(nodes.size()) != 1 + j_count + k_count) {
    fail("scenario must contain exactly one BS");
  }
  for (int id = 0; id < num_nodes(); ++id) {
    const Node& n = nodes[id];
    if (n.id != id) {
      fail("node ids must be contiguous from 0; found id " +
           std::to_string(n.id) + " at position " + std::to_string(id));
    }
    NodeKind expected = id == 0            ? NodeKind::kBs
                        : id <= j_count    ? NodeKind::kIrs
                                           : NodeKind::kUser;
    if (n.kind != expected) {
      fail("node " + std::to_string(id) + " has kind " + to_string(n.kind) +
           " but ids 0 / 1..J / J+1..J+K must be bs / irs / user");
    }
    if (n.kind != NodeKind::kUser && std::abs(n.facing.norm() - 1.0) > 1e-9) {
      fail("node " + std::to_string(id) + " facing vector is not unit norm");
    }
    if (n.kind == NodeKind::kIrs &&
        std::abs(n.facing.z()) > 1.0 - 1e-9) {
      fail("node " + std::to_string(id) +
           " faces vertically; IRS surfaces must stand upright");
    }
  }
  for (int i = 0; i < num_nodes(); ++i) {
    for (int j = i + 1; j < num_nodes(); ++j) {
      const double d = distance(i, j);
      if (d < d0) {
        std::ostringstream msg;
        msg << "nodes " << i << " and " << j << " are " << d
            << " m apart, below the far-field distance d0 = " << d0;
        fail(msg.str());
      }
    }
  }
  for (const LosOverride& o : los_overrides) {
    if (o.i < 0 || o.j < 0 || o.i >= num_nodes() || o.j >= num_nodes() ||
        o.i == o.j) {
      fail("los override references invalid node pair " +
           std::to_string(o.i) + "," + std::to_string(o.j));
    }
    const bool blocked_pair =
        (kind(o.i) != NodeKind::kIrs && kind(o.j) != NodeKind::kIrs);
    if (o.los && blocked_pair) {
      fail("los override cannot enable link " + std::to_string(o.i) + "," +
           std::to_string(o.j) + " (BS-user and user-user links are blocked)");
    }
  }
}

double free_space_beta(double lambda) {
  const double r = lambda / (4.0 * kPi);
  return r * r;
}

void LosMap::set(int i, int j, bool los) {
  bits_[static_cast<size_t>(i) * n_ + j] = los ? 1 : 0;
  bits_[static_cast<size_t>(j) * n_ + i] = los ? 1 : 0;
}

std::vector<int> LosMap::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if ((*this)(i, j)) out.push_back(j);
  }
  return out;
}

namespace {

bool in_front_of(const Node& irs, const Node& other) {
  return irs.facing.dot(other.position - irs.position) > 0.0;
}

}  // namespace

bool los_indicator(const Scenario& s, int i, int j) {
  if (i == j) return false;
  for (auto it = s.los_overrides.rbegin(); it != s.los_overrides.rend(); ++it) {
    if ((it->i == i && it->j == j) || (it->i == j && it->j == i)) {
      return it->los;
    }
  }
  const Node& a = s.nodes.at(i);
  const Node& b = s.nodes.at(j);
  const bool a_irs = a.kind == NodeKind::kIrs;
  const bool b_irs = b.kind == NodeKind::kIrs;
  if (!a_irs && !b_irs) return false;
  bool facing_ok;
  if (a_irs && b_irs) {
    facing_ok = in_front_of(a, b) && in_front_of(b, a);
  } else if (a_irs) {
    facing_ok = in_front_of(a, b);
  } else {
    facing_ok = in_front_of(b, a);
  }
  return facing_ok && s.distance(i, j) <= s.los_threshold;
}

LosMap compute_los_map(const Scenario& s) {
  LosMap los(s.num_nodes());
  for (int i = 0; i < s.num_nodes(); ++i) {
    for (int j = i + 1; j < s.num_nodes(); ++j) {
      los.set(i, j, los_indicator(s, i, j));
    }
  }
  return los;
}

bool is_forward_link(const Scenario& s, const LosMap& los, int i, int j) {
  if (!los(i, j)) return false;
  const NodeKind ki = s.kind(i);
  const NodeKind kj = s.kind(j);
  if (ki == NodeKind::kBs) return kj == NodeKind::kIrs;
  if (ki == NodeKind::kIrs && kj == NodeKind::kUser) return true;
  if (ki == NodeKind::kIrs && kj == NodeKind::kIrs) {
    return s.distance(j, 0) > s.distance(i, 0);
  }
  return false;
}

LocalFrame irs_frame(const Node& irs) {
  const Vec3 y = irs.facing.normalized();
  const Vec3 up = Vec3::UnitZ();
  Vec3 z = up - up.dot(y) * y;
  if (z.norm() < 1e-9) {
    throw GeometryError("IRS " + std::to_string(irs.id) +
                        " faces vertically; local frame undefined");
  }
  z.normalize();
  const Vec3 x = y.cross(z);
  return {x, y, z};
}

namespace {

Vec3 unit_direction(const Scenario& s, int from, int to) {
  const Vec3 d = s.nodes.at(to).position - s.nodes.at(from).position;
  const double n = d.norm();
  if (n < 1e-12) {
    throw GeometryError("nodes " + std::to_string(from) + " and " +
                        std::to_string(to) + " coincide");
  }
  return d / n;
}

}  // namespace

DirectionAngles irs_direction(const Scenario& s, int j, int other) {
  const LocalFrame f = irs_frame(s.nodes.at(j));
  const Vec3 u = unit_direction(s, j, other);
  const double ux = u.dot(f.x);
  const double uy = u.dot(f.y);
  const double uz = std::clamp(u.dot(f.z), -1.0, 1.0);
  return {std::atan2(uy, ux), std::acos(uz)};
}

double bs_aod(const Scenario& s, int j) {
  const Node& bs = s.nodes.at(0);
  Vec3 axis = bs.facing.cross(Vec3::UnitZ());
  if (axis.norm() < 1e-9) {
    throw GeometryError("BS boresight is vertical; ULA axis undefined");
  }
  axis.normalize();
  const Vec3 u = unit_direction(s, 0, j);
  return std::asin(std::clamp(u.dot(axis), -1.0, 1.0));
}

TripleAngles compute_angles(const Scenario& s, int i, int j, int r) {
  if (i == j || j == r || i == r) {
    throw std::invalid_argument("compute_angles: nodes must be distinct");
  }
  if (!s.is_irs(j)) {
    throw std::invalid_argument("compute_angles: middle node must be an IRS");
  }
  TripleAngles t;
  t.i = i;
  t.j = j;
  t.r = r;
  t.arrival = irs_direction(s, j, i);
  t.departure = irs_direction(s, j, r);
  t.phi1 = std::sin(t.departure.elevation) * std::cos(t.departure.azimuth) -
           std::sin(t.arrival.elevation) * std::cos(t.arrival.azimuth);
  t.phi2 = std::cos(t.departure.elevation) - std::cos(t.arrival.elevation);
  return t;
}

ComplexVector bs_response_toward(const Scenario& s, int j) {
  return bs_array_response(bs_aod(s, j), s.n_b, s.d_a, s.lambda);
}

ComplexVector irs_response_toward(const Scenario& s, int j, int other) {
  const DirectionAngles a = irs_direction(s, j, other);
  return irs_array_response(a.azimuth, a.elevation, s.m1, s.m2, s.d_i,
                            s.lambda);
}

Complex los_prefactor(const Scenario& s, int i, int j) {
  const double d = s.distance(i, j);
  return std::sqrt(s.beta) / d * std::polar(1.0, -2.0 * kPi * d / s.lambda);
}

namespace {

void require_los(const LosMap& los, int i, int j) {
  if (!los(i, j)) {
    throw ContractViolation("no LoS link between nodes " + std::to_string(i) +
                            " and " + std::to_string(j));
  }
}

}  // namespace

ComplexMatrix channel_bs_irs(const Scenario& s, const LosMap& los, int j) {
  if (!s.is_irs(j)) throw ContractViolation("channel_bs_irs: j is not an IRS");
  require_los(los, 0, j);
  const ComplexVector h1 = bs_response_toward(s, j);
  const ComplexVector h2 = irs_response_toward(s, j, 0);
  return los_prefactor(s, 0, j) * h2 * h1.adjoint();
}

ComplexMatrix channel_irs_irs(const Scenario& s, const LosMap& los, int i,
                              int j) {
  if (!s.is_irs(i) || !s.is_irs(j)) {
    throw ContractViolation("channel_irs_irs: both nodes must be IRSs");
  }
  require_los(los, i, j);
  const ComplexVector s1 = irs_response_toward(s, i, j);
  const ComplexVector s2 = irs_response_toward(s, j, i);
  return los_prefactor(s, i, j) * s2 * s1.adjoint();
}

ComplexRowVector channel_irs_user(const Scenario& s, const LosMap& los, int j,
                                  int user_node) {
  if (!s.is_irs(j) || !s.is_user(user_node)) {
    throw ContractViolation("channel_irs_user: expects an IRS and a user");
  }
  require_los(los, j, user_node);
  const ComplexVector g = irs_response_toward(s, j, user_node);
  return los_prefactor(s, j, user_node) * g.adjoint();
}

ComplexMatrix los_channel(const Scenario& s, const LosMap& los, int from,
                          int to) {
  const NodeKind kf = s.kind(from);
  const NodeKind kt = s.kind(to);
  if (kf == NodeKind::kBs && kt == NodeKind::kIrs) {
    return channel_bs_irs(s, los, to);
  }
  if (kf == NodeKind::kIrs && kt == NodeKind::kIrs) {
    return channel_irs_irs(s, los, from, to);
  }
  if (kf == NodeKind::kIrs && kt == NodeKind::kUser) {
    return channel_irs_user(s, los, from, to);
  }
  throw ContractViolation("los_channel: unsupported link direction " +
                          std::to_string(from) + " -> " + std::to_string(to));
}

ComplexMatrix rayleigh_unit_channel(const Scenario& s, int from, int to,
                                    std::uint64_t seed) {
  if (from == to) throw ContractViolation("rayleigh channel needs i != j");
  const bool bs_user =
      (s.kind(from) == NodeKind::kBs && s.kind(to) == NodeKind::kUser) ||
      (s.kind(to) == NodeKind::kBs && s.kind(from) == NodeKind::kUser);
  if (bs_user) {
    throw ContractViolation("BS-user direct links are blocked");
  }
  const int lo = std::min(from, to);
  const int hi = std::max(from, to);
  const std::uint64_t pair_seed =
      derive_seed(seed, {static_cast<std::uint64_t>(lo),
                         static_cast<std::uint64_t>(hi)});
  ComplexMatrix canonical =
      complex_gaussian(s.dimension(hi), s.dimension(lo), pair_seed);
  if (from == lo) return canonical;
  return canonical.transpose();
}

ComplexMatrix rayleigh_channel(const Scenario& s, const LosMap& los, int from,
                               int to, std::uint64_t seed, double alpha) {
  if (los(from, to)) {
    throw ContractViolation("rayleigh_channel: link " + std::to_string(from) +
                            "-" + std::to_string(to) + " has LoS");
  }
  const double variance = s.beta * std::pow(s.distance(from, to), -alpha);
  return std::sqrt(variance) * rayleigh_unit_channel(s, from, to, seed);
}

ComplexMatrix rayleigh_channel(const Scenario& s, const LosMap& los, int from,
                               int to, std::uint64_t seed) {
  return rayleigh_channel(s, los, from, to, seed, s.alpha);
}

}  // namespace irsroute

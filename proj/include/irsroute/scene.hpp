#ifndef IRSROUTE_SCENE_HPP
#define IRSROUTE_SCENE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsroute/numerics.hpp"

namespace irsroute {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is called outside its precondition, e.g. asking
// for a LoS channel over a link without line of sight.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class NodeKind { kBs, kIrs, kUser };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& name);

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::kIrs;
  Vec3 position = Vec3::Zero();
  // Surface normal for an IRS, array boresight for the BS, unused for users.
  Vec3 facing = Vec3::UnitY();
};

struct LosOverride {
  int i = 0;
  int j = 0;
  bool los = false;
};

// Node 0 is the BS, nodes 1..J are IRSs and J+1..J+K are users.
struct Scenario {
  std::vector<Node> nodes;
  double lambda = 0.06;
  double beta = 0.0;  // LoS path gain at 1 m (linear)
  double d_a = 0.03;
  double d_i = 0.015;
  int n_b = 32;
  int m1 = 24;
  int m2 = 24;
  int b1 = 7;
  int b2 = 7;
  double d0 = 2.5;
  double los_threshold = 5.0;
  double alpha = 2.5;
  std::vector<LosOverride> los_overrides;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_irs() const;
  int num_users() const;
  int elements() const { return m1 * m2; }
  // Node id of user k, k in 1..K.
  int user_node(int k) const { return num_irs() + k; }
  // User index k in 1..K of a user node.
  int user_index(int node) const { return node - num_irs(); }
  NodeKind kind(int id) const { return nodes.at(id).kind; }
  bool is_irs(int id) const { return kind(id) == NodeKind::kIrs; }
  bool is_user(int id) const { return kind(id) == NodeKind::kUser; }
  double distance(int i, int j) const;
  // Number of antennas/elements seen on node `id`'s side of a link.
  int dimension(int id) const;

  // Throws ScenarioError naming the first violated invariant.
  void validate() const;
};

// (lambda / 4 pi)^2
double free_space_beta(double lambda);

class LosMap {
 public:
  LosMap() = default;
  explicit LosMap(int n) : n_(n), bits_(static_cast<size_t>(n) * n, 0) {}

  int size() const { return n_; }
  bool operator()(int i, int j) const {
    return bits_[static_cast<size_t>(i) * n_ + j] != 0;
  }
  void set(int i, int j, bool los);
  std::vector<int> neighbors(int i) const;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

bool los_indicator(const Scenario& s, int i, int j);
LosMap compute_los_map(const Scenario& s);

// Edge rule of the routing DAG: BS -> IRS, nearer IRS -> farther IRS (by
// distance to the BS), IRS -> user, each only over a LoS link.
bool is_forward_link(const Scenario& s, const LosMap& los, int i, int j);

// Local frame of an IRS: y along the surface normal, z the in-plane
// direction closest to world up, x = y cross z. The URA spans local x-z.
struct LocalFrame {
  Vec3 x;
  Vec3 y;
  Vec3 z;
};
LocalFrame irs_frame(const Node& irs);

struct DirectionAngles {
  double azimuth = 0.0;    // from local x toward local y
  double elevation = 0.0;  // from local z
};

// Angles of the direction from IRS `j` toward node `other`, in j's frame.
DirectionAngles irs_direction(const Scenario& s, int j, int other);

// AoD at the BS toward node j, measured from boresight in the plane of the
// horizontal ULA (sin of the angle is the projection on the array axis).
double bs_aod(const Scenario& s, int j);

struct TripleAngles {
  int i = 0;
  int j = 0;
  int r = 0;
  DirectionAngles arrival;    // at j, toward i
  DirectionAngles departure;  // at j, toward r
  double phi1 = 0.0;
  double phi2 = 0.0;
};

TripleAngles compute_angles(const Scenario& s, int i, int j, int r);

// Array responses at either end of a LoS link.
ComplexVector bs_response_toward(const Scenario& s, int j);
ComplexVector irs_response_toward(const Scenario& s, int j, int other);

// sqrt(beta)/d * exp(-j 2 pi d / lambda)
Complex los_prefactor(const Scenario& s, int i, int j);

ComplexMatrix channel_bs_irs(const Scenario& s, const LosMap& los, int j);
ComplexMatrix channel_irs_irs(const Scenario& s, const LosMap& los, int i,
                              int j);
ComplexRowVector channel_irs_user(const Scenario& s, const LosMap& los, int j,
                                  int user_node);

// LoS channel from node `from` to node `to` as a dim(to) x dim(from) matrix.
ComplexMatrix los_channel(const Scenario& s, const LosMap& los, int from,
                          int to);

// Rayleigh channel from `from` to `to`, dim(to) x dim(from), entry variance
// beta * d^-alpha. Draws are keyed on the unordered pair, so the reverse
// direction is the transpose.
ComplexMatrix rayleigh_channel(const Scenario& s, const LosMap& los, int from,
                               int to, std::uint64_t seed);
ComplexMatrix rayleigh_channel(const Scenario& s, const LosMap& los, int from,
                               int to, std::uint64_t seed, double alpha);
// Same draw with unit variance (no path loss applied).
ComplexMatrix rayleigh_unit_channel(const Scenario& s, int from, int to,
                                    std::uint64_t seed);

// --- scenario documents ---------------------------------------------------

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

// Representative 13-IRS / 4-user indoor deployment.
Scenario bundled_scenario();

// Users get one sector each in front of the BS, reached by a chain of one to
// three IRSs; IRSs left over are scattered within `box` metres of the BS.
struct RandomScenarioParams {
  int num_irs = 6;
  int num_users = 2;
  double box = 14.0;
  double height = 3.0;
  double los_threshold = 6.0;
  int m0 = 8;
  int b0 = 3;
  int n_b = 32;
};

Scenario random_scenario(const RandomScenarioParams& params,
                         std::uint64_t seed);

}  // namespace irsroute

#endif  // IRSROUTE_SCENE_HPP

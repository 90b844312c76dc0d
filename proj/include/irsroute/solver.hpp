#ifndef IRSROUTE_SOLVER_HPP
#define IRSROUTE_SOLVER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsroute/beamforming.hpp"
#include "irsroute/clique.hpp"
#include "irsroute/evaluation.hpp"
#include "irsroute/graphs.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

struct SolveOptions {
  int q = 5;
  BeamMode mode = BeamMode::kDiscrete;
  // When false every user simply takes its own shortest path.
  bool enforce_separation = true;
  int hop_depth = 1;
  WeightModel weights = WeightModel::kChannel;
  // Continuous mode with channel weights searches the weighted G0 directly;
  // clear to force the line graph with every amplitude equal to M.
  bool continuous_on_g0 = true;
};

struct RoutingSolution {
  bool feasible = false;
  std::string scheme = "proposed";
  BeamMode mode = BeamMode::kDiscrete;
  int q = 0;
  int num_users = 0;           // K of the scenario
  std::vector<int> admitted;   // admitted user indices, ascending
  std::vector<UserRoute> routes;  // parallel to `admitted`
  double objective = 0.0;          // min model gain over admitted users
  double cascade_objective = 0.0;  // min cascade gain over admitted users
  double clique_weight = kInfiniteCost;  // max candidate cost of the clique
  int largest_clique = 0;
  long clique_nodes = 0;
  double runtime_ms = 0.0;

  double objective_db() const;
  const UserRoute* route_for(int user) const;
};

// Per-user candidate lists for the given options.
std::vector<std::vector<CandidatePath>> candidate_paths(
    const Scenario& s, const LosMap& los, const BeamGainTable& table,
    const SolveOptions& opts);

RoutingSolution solve_mbmh(const Scenario& s, const SolveOptions& opts);

// Configures beams and gains for the chosen node sequences of `users`.
RoutingSolution assemble_solution(const Scenario& s, const LosMap& los,
                                  const BeamGainTable& table,
                                  const std::vector<int>& users,
                                  const std::vector<std::vector<int>>& paths);

// Largest admissible user subset; among subsets of equal size the one with
// the smallest clique weight wins, ties to the lexicographically first.
RoutingSolution max_admission(const Scenario& s, const SolveOptions& opts);

// Retries solve_mbmh with Q doubled until feasible or Q exceeds q_max.
RoutingSolution solve_with_escalation(const Scenario& s, SolveOptions opts,
                                      int q_max);

RoutingSolution benchmark_sequential(const Scenario& s, BeamMode mode);
RoutingSolution benchmark_min_pathloss(const Scenario& s, int q, BeamMode mode);
RoutingSolution benchmark_max_cpb(const Scenario& s, int q, BeamMode mode);

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search over all simple paths and user tuples, scored by the
// closed-form gain. Throws InstanceTooLarge above `max_tuples` tuples.
RoutingSolution brute_force_oracle(const Scenario& s, BeamMode mode,
                                   double max_tuples = 1e6);

struct Violation {
  std::string constraint;  // "distinct-irs", "los-hop", "path-separation",
                           // or "structure"
  std::string detail;
};

// Independent check of a routing against the path constraints.
std::vector<Violation> validate_routing(const Scenario& s, const LosMap& los,
                                        const RoutingSolution& solution);

std::string solution_to_json_text(const RoutingSolution& solution);
RoutingSolution solution_from_json_text(const std::string& text);
void save_solution(const RoutingSolution& solution, const std::string& path);
RoutingSolution load_solution(const std::string& path);

}  // namespace irsroute

#endif  // IRSROUTE_SOLVER_HPP

#ifndef IRSROUTE_SCATTER_HPP
#define IRSROUTE_SCATTER_HPP

#include <cstdint>
#include <vector>

#include "irsroute/solver.hpp"

namespace irsroute {

struct ScatterReport {
  int victim = 0;                     // user index
  double cascade = 0.0;               // LoS cascade gain of the victim
  std::vector<double> alphas;
  std::vector<double> overall;        // mean |own signal|^2 incl. scatter
  std::vector<double> interference;   // mean sum over other users' beams
};

// Monte-Carlo evaluation of scattered propagation for one victim user.
// Signals leave the BS on every admitted user's beam and reach the victim
// over the beamformed paths, their prefixes and all one- or two-IRS detours
// through active IRSs; links without LoS are Rayleigh with exponent alpha.
// Unit-variance draws are shared across the alpha values.
ScatterReport evaluate_scatter(const Scenario& s,
                               const RoutingSolution& solution, int victim,
                               const std::vector<double>& alphas,
                               std::uint64_t seed, int realizations);

double interference_power(const Scenario& s, const RoutingSolution& solution,
                          int victim, std::uint64_t seed, int realizations);
double overall_gain_with_scatter(const Scenario& s,
                                 const RoutingSolution& solution, int victim,
                                 std::uint64_t seed, int realizations);

struct FavorablePair {
  int irs = 0;       // first-hop IRS whose channel is measured
  int other = 0;     // first-hop IRS whose beam is applied
  double value = 0;  // |h^H w|^2 / N_B
};

struct FavorableReport {
  std::vector<FavorablePair> own;
  std::vector<FavorablePair> leakage;
};

FavorableReport favorable_propagation(const Scenario& s,
                                      const RoutingSolution& solution);

}  // namespace irsroute

#endif  // IRSROUTE_SCATTER_HPP

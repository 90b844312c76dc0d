#ifndef IRSROUTE_SWEEP_HPP
#define IRSROUTE_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "irsroute/solver.hpp"

namespace irsroute {

enum class SweepAxis { kM0, kB0, kAlpha, kQ };

const char* to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

// Schemes: "proposed", "continuous", "sequential", "min-pathloss", "max-cpb"
// for the M0 / b0 / Q axes; "cascade", "overall", "interference" for alpha.
std::vector<std::string> default_schemes(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::kM0;
  std::vector<double> values;
  std::vector<std::string> schemes;  // empty: default_schemes(axis)
  int q = 5;
  std::uint64_t seed = 1;
  int realizations = 100;
  bool record_timing = true;
};

struct SweepRow {
  double axis_value = 0.0;
  std::string scheme;
  double objective_db = 0.0;       // NaN when infeasible
  std::vector<double> user_gain_db;  // NaN for users not admitted
  bool feasible = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

struct SweepTable {
  int num_users = 0;
  std::vector<SweepRow> rows;

  std::string header() const;
  std::string to_csv() const;
  static SweepTable from_csv(const std::string& text);
};

SweepTable run_sweep(const Scenario& s, const SweepConfig& config);

// Runs one scheme on a scenario; `q` is ignored by the sequential scheme.
RoutingSolution run_scheme(const Scenario& s, const std::string& scheme,
                           int q);

}  // namespace irsroute

#endif  // IRSROUTE_SWEEP_HPP

#ifndef IRSROUTE_DOUBLE_IRS_HPP
#define IRSROUTE_DOUBLE_IRS_HPP

#include <cstdint>
#include <vector>

#include "irsroute/scene.hpp"

namespace irsroute {

// Four-node layout shared by both examples: BS (0), IRS 1 near the BS,
// IRS 2 near the user, IRS 3 relaying between them, user (4). IRSs 1 and 2
// are beyond the LoS threshold of each other.
Scenario double_irs_scenario(int m_side);

// All-LoS three-IRS route 0 -> 1 -> 3 -> 2 -> user with continuous beams and
// MRT at the BS, evaluated by the explicit cascade.
double example2_gain(const Scenario& s);

struct AlternatingResult {
  double gain = 0.0;  // for a unit-variance inter-IRS channel
  int iterations = 0;
  bool converged = false;
};

// Route 0 -> 1 -> 2 -> user over the Rayleigh link 1-2 (unit variance).
// Starting from all-ones beams, each IRS in turn is set to the phase
// conjugate of its effective channel until the relative improvement drops
// below `tolerance` or `max_iterations` is reached.
AlternatingResult alternating_double_irs(const Scenario& s,
                                         const ComplexMatrix& inter_irs,
                                         double tolerance = 1e-6,
                                         int max_iterations = 100);

struct DoubleIrsReport {
  double example2 = 0.0;
  std::vector<double> alphas;
  std::vector<double> example1;  // mean over realizations, per alpha
  int not_converged = 0;
};

DoubleIrsReport double_irs_example(const Scenario& s,
                                   const std::vector<double>& alphas,
                                   std::uint64_t seed, int realizations);

}  // namespace irsroute

#endif  // IRSROUTE_DOUBLE_IRS_HPP

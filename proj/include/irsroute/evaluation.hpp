#ifndef IRSROUTE_EVALUATION_HPP
#define IRSROUTE_EVALUATION_HPP

#include <cstdint>
#include <vector>

#include "irsroute/beamforming.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

struct HopBeam {
  int prev = 0;
  int irs = 0;
  int next = 0;
  int horizontal_index = -1;
  int vertical_index = -1;
  double amplitude = 0.0;  // reflection amplitude of the configured beam
};

// One user's reflection path with its beams and gains.
struct UserRoute {
  int user = 0;            // 1..K
  std::vector<int> nodes;  // BS, IRSs..., user
  std::vector<HopBeam> hops;
  int bs_index = -1;       // -1 for an MRT beam
  double bs_amplitude = 0.0;
  double phase = 0.0;      // BS phase compensation (radians)
  double cost = 0.0;       // -ln(model_gain)
  double model_gain = 0.0;    // closed form with N_B as the BS array gain
  double cascade_gain = 0.0;  // explicit matrix cascade with realized beams

  std::vector<int> irs() const;
};

struct PathBeams {
  ComplexVector w;                      // BS beam, phase compensated
  std::vector<ComplexVector> passive;  // one per IRS on the path
};

PathBeams route_beams(const Scenario& s, const LosMap& los,
                      const BeamGainTable& table, const std::vector<int>& nodes);

// Builds a fully configured route for user k along `nodes`.
UserRoute configure_route(const Scenario& s, const LosMap& los,
                          const BeamGainTable& table, int user,
                          const std::vector<int>& nodes);

// Scalar BS-user channel g^H Phi_N S ... Phi_1 H w by explicit products.
Complex effective_channel(const Scenario& s, const LosMap& los,
                          const std::vector<int>& nodes,
                          const PathBeams& beams);
double effective_gain(const Scenario& s, const LosMap& los,
                      const std::vector<int>& nodes, const PathBeams& beams);

// beta^(N+1) * bs_gain^2 * prod(amp^2) / prod(d^2).
double closed_form_gain(const Scenario& s, const std::vector<int>& nodes,
                        const std::vector<double>& amplitudes,
                        double bs_amplitude);

// Upper bound beta^(N+1) * N_B * M^(2N) / prod(d^2).
double gain_ceiling(const Scenario& s, const std::vector<int>& nodes);

}  // namespace irsroute

#endif  // IRSROUTE_EVALUATION_HPP

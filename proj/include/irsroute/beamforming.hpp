#ifndef IRSROUTE_BEAMFORMING_HPP
#define IRSROUTE_BEAMFORMING_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "irsroute/numerics.hpp"
#include "irsroute/scene.hpp"

namespace irsroute {

enum class BeamMode { kDiscrete, kContinuous };

const char* to_string(BeamMode mode);
BeamMode beam_mode_from_string(const std::string& name);

struct Codebook {
  std::vector<ComplexVector> patterns;
  int bits = 0;

  int size() const { return static_cast<int>(patterns.size()); }
  int length() const {
    return patterns.empty() ? 0 : static_cast<int>(patterns.front().size());
  }
};

// Unit-norm DFT beams for an n_b-antenna ULA.
Codebook dft_codebook_bs(int n_b);
// 2^bits unit-modulus DFT patterns of length m0.
Codebook dft_codebook_irs(int bits, int m0);

struct BeamSelection {
  int index = -1;  // -1 for a codebook-free (continuous) beam
  double amplitude = 0.0;
};

// argmax over the codebook of |target^H pattern|, lowest index on ties.
BeamSelection best_pattern(const ComplexVector& target, const Codebook& cb);

struct PassiveSearch {
  BeamSelection horizontal;
  BeamSelection vertical;
  double amplitude = 0.0;
};

// Target vectors whose inner products with the two sub-beams give the
// reflection amplitude of a triple.
ComplexVector horizontal_target(const TripleAngles& t, int m1, double d_i,
                                double lambda);
ComplexVector vertical_target(const TripleAngles& t, int m2, double d_i,
                              double lambda);

PassiveSearch search_passive_decomposed(const TripleAngles& t,
                                        const Codebook& cb1,
                                        const Codebook& cb2, double d_i,
                                        double lambda);

// Exhaustive search over all Kronecker products cb1[a] (x) cb2[b] using the
// full M-element reflection response.
PassiveSearch search_passive_joint(const TripleAngles& t, const Codebook& cb1,
                                   const Codebook& cb2, double d_i,
                                   double lambda);

// Reflection amplitude |s_out^H diag(theta) s_in| of an arbitrary beam.
double reflection_amplitude(const TripleAngles& t, const ComplexVector& theta,
                            int m1, int m2, double d_i, double lambda);

ComplexVector combined_beam(const PassiveSearch& sel, const Codebook& cb1,
                            const Codebook& cb2);

struct ContinuousBeam {
  ComplexVector beam;
  double amplitude = 0.0;
};

ContinuousBeam continuous_passive(const TripleAngles& t, int m1, int m2,
                                  double d_i, double lambda);

BeamSelection search_active(const Scenario& s, const LosMap& los, int j,
                            const Codebook& cb);

struct ActiveBeam {
  ComplexVector w;
  BeamSelection selection;
};

// Codebook beam (discrete) or MRT (continuous) toward first-hop IRS j.
ActiveBeam active_beam(const Scenario& s, const LosMap& los, int j,
                       BeamMode mode);

// 2 pi / lambda times the summed hop distances of a full node sequence
// (BS, IRSs..., user).
double phase_compensation(const Scenario& s, const std::vector<int>& nodes);

struct GainEntry {
  double amplitude = 0.0;
  int horizontal_index = -1;
  int vertical_index = -1;
};

using Triple = std::tuple<int, int, int>;

class BeamGainTable {
 public:
  BeamGainTable() = default;
  explicit BeamGainTable(BeamMode mode) : mode_(mode) {}

  BeamMode mode() const { return mode_; }
  void set(int i, int j, int r, const GainEntry& e) { entries_[{i, j, r}] = e; }
  bool contains(int i, int j, int r) const {
    return entries_.count({i, j, r}) != 0;
  }
  // Throws std::out_of_range naming the triple when absent.
  const GainEntry& at(int i, int j, int r) const;
  const std::map<Triple, GainEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  std::string to_json_text() const;
  static BeamGainTable from_json_text(const std::string& text);

 private:
  BeamMode mode_ = BeamMode::kDiscrete;
  std::map<Triple, GainEntry> entries_;
};

// Entries for every pair of consecutive routing-DAG edges (i,j),(j,r).
BeamGainTable build_gain_table(const Scenario& s, const LosMap& los,
                               BeamMode mode);

// Beam configured on IRS j for a triple, from the table's indices.
ComplexVector passive_beam_for(const Scenario& s, const BeamGainTable& table,
                               int i, int j, int r);

}  // namespace irsroute

#endif  // IRSROUTE_BEAMFORMING_HPP

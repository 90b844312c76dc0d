#include "irsroute/beamforming.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace irsroute {

const char* to_string(BeamMode mode) {
  return mode == BeamMode::kDiscrete ? "discrete" : "continuous";
}

BeamMode beam_mode_from_string(const std::string& name) {
  if (name == "discrete") return BeamMode::kDiscrete;
  if (name == "continuous") return BeamMode::kContinuous;
  throw std::invalid_argument("unknown beam mode '" + name + "'");
}

Codebook dft_codebook_bs(int n_b) {
  if (n_b < 1) throw std::invalid_argument("dft_codebook_bs: n_b must be >= 1");
  Codebook cb;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_b));
  for (int i = 0; i < n_b; ++i) {
    cb.patterns.push_back(
        scale * steering_vector(SpatialFrequency(2.0 * i / n_b), n_b));
  }
  cb.bits = static_cast<int>(std::round(std::log2(n_b)));
  return cb;
}

Codebook dft_codebook_irs(int bits, int m0) {
  if (bits < 0 || bits > 20 || m0 < 1) {
    throw std::invalid_argument("dft_codebook_irs: bad bits or length");
  }
  const int d = 1 << bits;
  Codebook cb;
  cb.bits = bits;
  for (int i = 0; i < d; ++i) {
    cb.patterns.push_back(
        steering_vector(SpatialFrequency(2.0 * i / d), m0));
  }
  return cb;
}

BeamSelection best_pattern(const ComplexVector& target, const Codebook& cb) {
  if (cb.patterns.empty()) throw std::invalid_argument("empty codebook");
  BeamSelection best;
  for (int i = 0; i < cb.size(); ++i) {
    if (cb.patterns[i].size() != target.size()) {
      throw ContractViolation("codebook pattern length mismatch");
    }
    const double a = std::abs(target.dot(cb.patterns[i]));
    if (best.index < 0 || a > best.amplitude) {
      best.index = i;
      best.amplitude = a;
    }
  }
  return best;
}

ComplexVector horizontal_target(const TripleAngles& t, int m1, double d_i,
                                double lambda) {
  return steering_vector(SpatialFrequency(2.0 * d_i / lambda * t.phi1), m1);
}

ComplexVector vertical_target(const TripleAngles& t, int m2, double d_i,
                              double lambda) {
  return steering_vector(SpatialFrequency(2.0 * d_i / lambda * t.phi2), m2);
}

PassiveSearch search_passive_decomposed(const TripleAngles& t,
                                        const Codebook& cb1,
                                        const Codebook& cb2, double d_i,
                                        double lambda) {
  PassiveSearch out;
  out.horizontal = best_pattern(horizontal_target(t, cb1.length(), d_i, lambda),
                                cb1);
  out.vertical =
      best_pattern(vertical_target(t, cb2.length(), d_i, lambda), cb2);
  out.amplitude = out.horizontal.amplitude * out.vertical.amplitude;
  return out;
}

double reflection_amplitude(const TripleAngles& t, const ComplexVector& theta,
                            int m1, int m2, double d_i, double lambda) {
  const ComplexVector out =
      irs_array_response(t.departure.azimuth, t.departure.elevation, m1, m2,
                         d_i, lambda);
  const ComplexVector in = irs_array_response(
      t.arrival.azimuth, t.arrival.elevation, m1, m2, d_i, lambda);
  return std::abs(out.dot(theta.cwiseProduct(in)));
}

PassiveSearch search_passive_joint(const TripleAngles& t, const Codebook& cb1,
                                   const Codebook& cb2, double d_i,
                                   double lambda) {
  const int m1 = cb1.length();
  const int m2 = cb2.length();
  const ComplexVector out = irs_array_response(
      t.departure.azimuth, t.departure.elevation, m1, m2, d_i, lambda);
  const ComplexVector in = irs_array_response(
      t.arrival.azimuth, t.arrival.elevation, m1, m2, d_i, lambda);
  // Per-element reflection response: conj(out) .* in.
  const ComplexVector response = out.conjugate().cwiseProduct(in);
  PassiveSearch best;
  double best_amp = -1.0;
  for (int a = 0; a < cb1.size(); ++a) {
    for (int b = 0; b < cb2.size(); ++b) {
      const ComplexVector beam = kron(cb1.patterns[a], cb2.patterns[b]);
      const double amp = std::abs((response.transpose() * beam)(0));
      if (amp > best_amp) {
        best_amp = amp;
        best.horizontal.index = a;
        best.vertical.index = b;
      }
    }
  }
  best.amplitude = best_amp;
  best.horizontal.amplitude =
      std::abs(horizontal_target(t, m1, d_i, lambda)
                   .dot(cb1.patterns[best.horizontal.index]));
  best.vertical.amplitude = std::abs(
      vertical_target(t, m2, d_i, lambda).dot(cb2.patterns[best.vertical.index]));
  return best;
}

ComplexVector combined_beam(const PassiveSearch& sel, const Codebook& cb1,
                            const Codebook& cb2) {
  return kron(cb1.patterns.at(sel.horizontal.index),
              cb2.patterns.at(sel.vertical.index));
}

ContinuousBeam continuous_passive(const TripleAngles& t, int m1, int m2,
                                  double d_i, double lambda) {
  ContinuousBeam out;
  out.beam = kron(horizontal_target(t, m1, d_i, lambda),
                  vertical_target(t, m2, d_i, lambda));
  out.amplitude = static_cast<double>(m1) * m2;
  return out;
}

BeamSelection search_active(const Scenario& s, const LosMap& los, int j,
                            const Codebook& cb) {
  if (!s.is_irs(j) || !los(0, j)) {
    throw ContractViolation("search_active: no LoS link from the BS to node " +
                            std::to_string(j));
  }
  return best_pattern(bs_response_toward(s, j), cb);
}

ActiveBeam active_beam(const Scenario& s, const LosMap& los, int j,
                       BeamMode mode) {
  ActiveBeam out;
  if (mode == BeamMode::kDiscrete) {
    const Codebook cb = dft_codebook_bs(s.n_b);
    out.selection = search_active(s, los, j, cb);
    out.w = cb.patterns[out.selection.index];
    return out;
  }
  if (!s.is_irs(j) || !los(0, j)) {
    throw ContractViolation("active_beam: no LoS link from the BS to node " +
                            std::to_string(j));
  }
  const ComplexVector h = bs_response_toward(s, j);
  out.w = h / h.norm();
  out.selection.amplitude = std::abs(h.dot(out.w));
  return out;
}

double phase_compensation(const Scenario& s, const std::vector<int>& nodes) {
  if (nodes.size() < 3) {
    throw std::invalid_argument(
        "phase_compensation: a path needs the BS, at least one IRS and a user");
  }
  double total = 0.0;
  for (size_t n = 0; n + 1 < nodes.size(); ++n) {
    total += s.distance(nodes[n], nodes[n + 1]);
  }
  return 2.0 * kPi / s.lambda * total;
}

const GainEntry& BeamGainTable::at(int i, int j, int r) const {
  auto it = entries_.find({i, j, r});
  if (it == entries_.end()) {
    throw std::out_of_range("gain table has no entry for triple (" +
                            std::to_string(i) + ", " + std::to_string(j) +
                            ", " + std::to_string(r) + ")");
  }
  return it->second;
}

std::string BeamGainTable::to_json_text() const {
  nlohmann::json doc;
  doc["format"] = "irsroute-gain-table";
  doc["version"] = 1;
  doc["mode"] = to_string(mode_);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [key, e] : entries_) {
    const auto& [i, j, r] = key;
    list.push_back({{"i", i},
                    {"j", j},
                    {"r", r},
                    {"amplitude", e.amplitude},
                    {"horizontal_index", e.horizontal_index},
                    {"vertical_index", e.vertical_index}});
  }
  doc["entries"] = list;
  return doc.dump(2) + "\n";
}

BeamGainTable BeamGainTable::from_json_text(const std::string& text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.at("format") != "irsroute-gain-table") {
      throw std::runtime_error("not a gain table document");
    }
    BeamGainTable table(beam_mode_from_string(doc.at("mode").get<std::string>()));
    for (const auto& e : doc.at("entries")) {
      GainEntry g;
      g.amplitude = e.at("amplitude").get<double>();
      g.horizontal_index = e.at("horizontal_index").get<int>();
      g.vertical_index = e.at("vertical_index").get<int>();
      table.set(e.at("i").get<int>(), e.at("j").get<int>(),
                e.at("r").get<int>(), g);
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed gain table: ") + e.what());
  }
}

BeamGainTable build_gain_table(const Scenario& s, const LosMap& los,
                               BeamMode mode) {
  BeamGainTable table(mode);
  Codebook cb1;
  Codebook cb2;
  if (mode == BeamMode::kDiscrete) {
    cb1 = dft_codebook_irs(s.b1, s.m1);
    cb2 = dft_codebook_irs(s.b2, s.m2);
  }
  const int n = s.num_nodes();
  for (int j = 0; j < n; ++j) {
    if (!s.is_irs(j)) continue;
    for (int i = 0; i < n; ++i) {
      if (!is_forward_link(s, los, i, j)) continue;
      for (int r = 0; r < n; ++r) {
        if (!is_forward_link(s, los, j, r)) continue;
        const TripleAngles t = compute_angles(s, i, j, r);
        GainEntry e;
        if (mode == BeamMode::kContinuous) {
          e.amplitude = static_cast<double>(s.elements());
        } else {
          const PassiveSearch p =
              search_passive_decomposed(t, cb1, cb2, s.d_i, s.lambda);
          e.amplitude = p.amplitude;
          e.horizontal_index = p.horizontal.index;
          e.vertical_index = p.vertical.index;
        }
        table.set(i, j, r, e);
      }
    }
  }
  return table;
}

ComplexVector passive_beam_for(const Scenario& s, const BeamGainTable& table,
                               int i, int j, int r) {
  const TripleAngles t = compute_angles(s, i, j, r);
  if (table.mode() == BeamMode::kContinuous) {
    return continuous_passive(t, s.m1, s.m2, s.d_i, s.lambda).beam;
  }
  const GainEntry& e = table.at(i, j, r);
  const ComplexVector h =
      steering_vector(SpatialFrequency(2.0 * e.horizontal_index / (1 << s.b1)),
                      s.m1);
  const ComplexVector v =
      steering_vector(SpatialFrequency(2.0 * e.vertical_index / (1 << s.b2)),
                      s.m2);
  return kron(h, v);
}

}  // namespace irsroute

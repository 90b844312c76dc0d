#include "irsroute/double_irs.hpp"

#include <cmath>
#include <stdexcept>

#include "irsroute/beamforming.hpp"
#include "irsroute/evaluation.hpp"

namespace irsroute {

namespace {

constexpr double kApex = 3.5;  // height of IRS 3 above the IRS 1-2 baseline

ComplexVector phase_conjugate(const ComplexVector& a) {
  ComplexVector out(a.size());
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    const double mag = std::abs(a(n));
    out(n) = mag > 0.0 ? std::conj(a(n)) / mag : Complex(1.0);
  }
  return out;
}

}  // namespace

Scenario double_irs_scenario(int m_side) {
  if (m_side < 1) throw std::invalid_argument("m_side must be >= 1");
  Scenario s;
  s.beta = free_space_beta(s.lambda);
  s.m1 = m_side;
  s.m2 = m_side;
  s.nodes = {
      {0, NodeKind::kBs, Vec3(0.0, 0.0, 0.0), Vec3::UnitY()},
      {1, NodeKind::kIrs, Vec3(-3.0, 3.0, 0.0), Vec3::UnitX()},
      {2, NodeKind::kIrs, Vec3(3.0, 3.0, 0.0), Vec3::UnitY()},
      {3, NodeKind::kIrs, Vec3(0.0, 3.0 + kApex, 0.0), -Vec3::UnitY()},
      {4, NodeKind::kUser, Vec3(5.5, 5.5, 0.0), Vec3::UnitY()},
  };
  s.validate();
  return s;
}

double example2_gain(const Scenario& s) {
  const LosMap los = compute_los_map(s);
  const BeamGainTable table(BeamMode::kContinuous);
  const std::vector<int> nodes{0, 1, 3, 2, 4};
  return effective_gain(s, los, nodes, route_beams(s, los, table, nodes));
}

AlternatingResult alternating_double_irs(const Scenario& s,
                                         const ComplexMatrix& inter_irs,
                                         double tolerance,
                                         int max_iterations) {
  const LosMap los = compute_los_map(s);
  const int m = s.elements();
  if (inter_irs.rows() != m || inter_irs.cols() != m) {
    throw ContractViolation("inter-IRS channel must be M x M");
  }
  const ActiveBeam w = active_beam(s, los, 1, BeamMode::kContinuous);
  const ComplexVector x = los_channel(s, los, 0, 1) * w.w;
  const ComplexRowVector r = channel_irs_user(s, los, 2, 4);

  ComplexVector theta1 = ComplexVector::Ones(m);
  ComplexVector theta2 = ComplexVector::Ones(m);
  auto gain_of = [&]() {
    const ComplexVector at2 = inter_irs * theta1.cwiseProduct(x);
    return std::norm((r * theta2.cwiseProduct(at2))(0));
  };
  AlternatingResult out;
  double gain = gain_of();
  for (int it = 1; it <= max_iterations; ++it) {
    const ComplexVector at2 = inter_irs * theta1.cwiseProduct(x);
    theta2 = phase_conjugate(r.transpose().cwiseProduct(at2));
    const ComplexRowVector back = (r * theta2.asDiagonal()) * inter_irs;
    theta1 = phase_conjugate(back.transpose().cwiseProduct(x));
    const double next = gain_of();
    out.iterations = it;
    const double improvement = (next - gain) / std::max(gain, 1e-300);
    gain = next;
    if (improvement < tolerance) {
      out.converged = true;
      break;
    }
  }
  out.gain = gain;
  return out;
}

DoubleIrsReport double_irs_example(const Scenario& s,
                                   const std::vector<double>& alphas,
                                   std::uint64_t seed, int realizations) {
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  DoubleIrsReport report;
  report.example2 = example2_gain(s);
  report.alphas = alphas;
  report.example1.assign(alphas.size(), 0.0);
  const double d12 = s.distance(1, 2);
  for (int rz = 0; rz < realizations; ++rz) {
    const ComplexMatrix g = rayleigh_unit_channel(
        s, 1, 2, derive_seed(seed, {static_cast<std::uint64_t>(rz)}));
    const AlternatingResult ao = alternating_double_irs(s, g);
    if (!ao.converged) ++report.not_converged;
    for (size_t a = 0; a < alphas.size(); ++a) {
      report.example1[a] += ao.gain * s.beta * std::pow(d12, -alphas[a]);
    }
  }
  for (double& g : report.example1) g /= realizations;
  return report;
}

}  // namespace irsroute

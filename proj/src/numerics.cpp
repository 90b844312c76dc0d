#include "irsroute/numerics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace irsroute {

SpatialFrequency::SpatialFrequency(double raw) {
  if (!std::isfinite(raw)) {
    throw std::invalid_argument("spatial frequency must be finite");
  }
  double wrapped = raw - 2.0 * std::floor(raw / 2.0);
  // Rounding of tiny negative inputs can land exactly on 2.
  if (wrapped >= 2.0) wrapped = 0.0;
  value_ = wrapped;
}

ComplexVector steering_vector(SpatialFrequency phi, int n) {
  if (n < 1) {
    throw std::invalid_argument("steering vector length must be >= 1");
  }
  ComplexVector e(n);
  for (int m = 0; m < n; ++m) {
    e[m] = std::polar(1.0, -kPi * m * phi.value());
  }
  return e;
}

ComplexVector bs_array_response(double theta, int n_b, double d_a,
                                double lambda) {
  if (n_b < 1 || d_a <= 0.0 || lambda <= 0.0) {
    throw std::invalid_argument("bs_array_response: bad array parameters");
  }
  return steering_vector(SpatialFrequency(2.0 * d_a / lambda * std::sin(theta)),
                         n_b);
}

ComplexVector irs_array_response(double theta_a, double theta_e, int m1,
                                 int m2, double d_i, double lambda) {
  if (m1 < 1 || m2 < 1 || d_i <= 0.0 || lambda <= 0.0) {
    throw std::invalid_argument("irs_array_response: bad array parameters");
  }
  const double scale = 2.0 * d_i / lambda;
  const ComplexVector horizontal = steering_vector(
      SpatialFrequency(scale * std::sin(theta_e) * std::cos(theta_a)), m1);
  const ComplexVector vertical =
      steering_vector(SpatialFrequency(scale * std::cos(theta_e)), m2);
  return kron(horizontal, vertical);
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index p = 0; p < a.size(); ++p) {
    out.segment(p * b.size(), b.size()) = a[p] * b;
  }
  return out;
}

ComplexMatrix complex_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix out(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = Complex(re, im);
    }
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t tag : tags) {
    h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace irsroute

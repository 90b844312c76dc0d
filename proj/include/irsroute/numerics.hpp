#ifndef IRSROUTE_NUMERICS_HPP
#define IRSROUTE_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>

#include <Eigen/Dense>

namespace irsroute {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

// Phase-difference parameter of a uniform linear array. The steering vector
// is 2-periodic in it, so the value is kept in [0, 2).
class SpatialFrequency {
 public:
  explicit SpatialFrequency(double raw);

  double value() const { return value_; }

 private:
  double value_;
};

// e(phi, n): element m equals exp(-j*pi*m*phi).
ComplexVector steering_vector(SpatialFrequency phi, int n);

// ULA response for an angle of departure `theta` measured from boresight.
ComplexVector bs_array_response(double theta, int n_b, double d_a,
                                double lambda);

// URA response, horizontal (m1) factor kron vertical (m2) factor.
ComplexVector irs_array_response(double theta_a, double theta_e, int m1,
                                 int m2, double d_i, double lambda);

ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Circularly-symmetric complex Gaussian entries with unit variance.
ComplexMatrix complex_gaussian(int rows, int cols, std::uint64_t seed);

// SplitMix64-style mixing, used to derive independent stream seeds from a
// base seed and a list of integer tags.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> tags);

double to_db(double linear);
double from_db(double db);

}  // namespace irsroute

#endif  // IRSROUTE_NUMERICS_HPP

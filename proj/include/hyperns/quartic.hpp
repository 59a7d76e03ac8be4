#pragma once

#include <array>
#include <complex>

namespace hyperns {

/// Monic quartic z^4 + c3 z^3 + c2 z^2 + c1 z + c0.
struct QuarticCoefficients {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  template <typename T>
  T operator()(const T& z) const {
    return (((z + c3) * z + c2) * z + c1) * z + c0;
  }
  template <typename T>
  T derivative(const T& z) const {
    return ((T(4) * z + T(3 * c3)) * z + T(2 * c2)) * z + c1;
  }
  /// Sum of |c_k||z|^k, the natural magnitude of g(z) for relative residuals.
  double magnitude(double r) const {
    return (((r + std::abs(c3)) * r + std::abs(c2)) * r + std::abs(c1)) * r + std::abs(c0);
  }
};

using QuarticRoots = std::array<std::complex<double>, 4>;

/// Roots sorted by real part then imaginary part. Biquadratic input (|c3|, |c1| < 1e-14) uses
/// closed-form square roots; anything else goes through companion eigenvalues plus Newton polishing.
QuarticRoots solve_quartic(const QuarticCoefficients& c);

/// Coefficients of prod (z - r_i).
QuarticCoefficients quartic_from_roots(const std::array<double, 4>& r);

}  // namespace hyperns

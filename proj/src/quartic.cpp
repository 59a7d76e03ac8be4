#include "hyperns/quartic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hyperns {

namespace {

using cd = std::complex<double>;

// Roots of w^2 + b w + c avoiding cancellation.
std::array<cd, 2> quadratic(double b, double c) {
  const cd disc = std::sqrt(cd(b * b - 4.0 * c, 0.0));
  const cd qq = -0.5 * (cd(b, 0.0) + (b >= 0 ? disc : -disc));
  if (std::abs(qq) == 0.0) return {cd(0.0), cd(0.0)};
  return {qq, cd(c, 0.0) / qq};
}

cd polish(const QuarticCoefficients& g, cd z) {
  double best_res = std::abs(g(z));
  cd best = z;
  for (int it = 0; it < 50; ++it) {
    const double tol = 1e-12 * (1.0 + std::pow(std::abs(z), 4));
    if (best_res < 1e-3 * tol) break;
    const cd d = g.derivative(z);
    if (std::abs(d) == 0.0) break;
    z -= g(z) / d;
    const double r = std::abs(g(z));
    if (r < best_res) {
      best_res = r;
      best = z;
    } else if (it > 5) {
      break;
    }
  }
  return best;
}

}  // namespace

QuarticRoots solve_quartic(const QuarticCoefficients& c) {
  QuarticRoots roots;
  if (std::abs(c.c3) < 1e-14 && std::abs(c.c1) < 1e-14) {
    const auto w = quadratic(c.c2, c.c0);
    roots = {-std::sqrt(w[0]), std::sqrt(w[0]), -std::sqrt(w[1]), std::sqrt(w[1])};
    // Real-axis roots come out with a signed-zero imaginary part; drop it.
    for (auto& z : roots)
      if (std::abs(z.imag()) <= 1e-300) z = cd(z.real(), 0.0);
  } else {
    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    comp(0, 3) = -c.c0;
    comp(1, 3) = -c.c1;
    comp(2, 3) = -c.c2;
    comp(3, 3) = -c.c3;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
    for (int i = 0; i < 4; ++i) roots[i] = polish(c, es.eigenvalues()(i));
    // Conjugate pairs from the eigensolver may be real roots split by round-off; the
    // polish keeps them as they are, so snap negligible imaginary parts.
    for (auto& z : roots)
      if (std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z.real()))) z = cd(z.real(), 0.0);
  }
  std::sort(roots.begin(), roots.end(), [](const cd& a, const cd& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return roots;
}

QuarticCoefficients quartic_from_roots(const std::array<double, 4>& r) {
  // Expand (z - r0)(z - r1)(z - r2)(z - r3).
  std::array<double, 5> a{1, 0, 0, 0, 0};  // a[k] multiplies z^(4-k)
  int deg = 0;
  for (double ri : r) {
    ++deg;
    for (int k = deg; k >= 1; --k) a[k] -= ri * a[k - 1];
  }
  return {a[1], a[2], a[3], a[4]};
}

}  // namespace hyperns

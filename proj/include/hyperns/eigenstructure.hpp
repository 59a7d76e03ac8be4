#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hyperns/quartic.hpp"
#include "hyperns/thermo.hpp"

namespace hyperns {

/// Unit direction in R^n.
class Direction {
 public:
  /// Throws DomainError unless | |v| - 1 | <= 1e-14.
  explicit Direction(const SpaceVector<double>& v);
  static Direction normalized(const SpaceVector<double>& v);
  static Direction axis(int n, int a);

  const SpaceVector<double>& xi() const { return xi_; }
  int dim() const { return static_cast<int>(xi_.size()); }

 private:
  struct Unchecked {};
  Direction(const SpaceVector<double>& v, Unchecked) : xi_(v) {}
  SpaceVector<double> xi_;
};

/// Which theta-row coupling the first-order system carries.
///  printed:   theta-q coupling 1, matching the published matrix and quartic.
///  physical:  theta-q coupling 1/(rho e_theta), the linearisation of the PDE itself.
///  transport: Jacobian of the split hyperbolic stage, where q and S2 are only advected.
enum class CouplingForm { printed, physical, transport };

/// Unknown ordering of the first-order system: rho, u (n), theta, q (n), S2.
struct SystemLayout {
  int n;
  int size() const { return 2 * n + 3; }
  int rho() const { return 0; }
  int u(int i) const { return 1 + i; }
  int theta() const { return n + 1; }
  int q(int i) const { return n + 2 + i; }
  int s2() const { return 2 * n + 2; }
};

/// Acoustic speed squared of the split hyperbolic stage:
/// p_rho + p_theta (theta p_theta - S2) / (rho^2 e_theta). Its quartic is z^2 (z^2 - c^2).
double split_sound_speed_squared(const PrimitiveState<double>& s, const ThermoPartials<double>& d);

SystemMatrix<double> assemble_flux_jacobian(const PrimitiveState<double>& s, const Direction& xi,
                                            const ModelParams& p, CouplingForm form = CouplingForm::printed);

QuarticCoefficients quartic_g(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                              CouplingForm form = CouplingForm::printed);

struct EigenReport {
  QuarticRoots quartic_roots{};
  std::vector<double> eigenvalues;            ///< dense solver, real parts, ascending
  std::vector<double> predicted_eigenvalues;  ///< u.xi (x 2n-1) and u.xi - z_i, ascending
  double eigenvalue_mismatch = 0.0;           ///< max |dense - predicted| after sorted pairing
  double max_imag_part = 0.0;                 ///< largest |Im| among dense eigenvalues
  int eigenvector_count = 0;
  int system_size = 0;
  double max_speed = 0.0;
  bool roots_real_distinct = false;
  bool roots_straddle_zero = false;
  bool hyperbolic = false;
  double g_at_zero = 0.0;
  std::pair<double, double> g_at_mu_pm{0.0, 0.0};
};

EigenReport analyse(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                    CouplingForm form = CouplingForm::printed);

/// Max relative defect of det(A - L I) = (u.xi - L)^(2n-1) g(u.xi - L) over num_samples L in [-5, 5].
double characteristic_factorization_check(const PrimitiveState<double>& s, const Direction& xi,
                                          const ModelParams& p, int num_samples, std::uint64_t seed = 0,
                                          CouplingForm form = CouplingForm::printed);

/// Right eigenvectors: the explicit 2n-1 kernel family for L = u.xi plus one vector per quartic
/// root (real roots only). Columns are unit length.
Eigen::MatrixXd eigenvector_basis(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                                  CouplingForm form = CouplingForm::printed);

/// Numerical rank of eigenvector_basis.
int eigenvector_completeness(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                             CouplingForm form = CouplingForm::printed);

/// max_i |u.xi - z_i| with the given coupling.
double pointwise_max_speed(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p,
                           CouplingForm form = CouplingForm::physical);

/// Uniform sample of the admissible box in dimension n: rho, theta uniform, u, q uniform in
/// balls of radius u_max and delta (scaled by `interior`, which keeps |q|, |S2| strictly below delta).
PrimitiveState<double> sample_admissible_state(const ModelParams& p, int n, std::mt19937_64& rng,
                                               double interior = 0.999);

/// Uniformly distributed unit vector in R^n.
Direction sample_direction(int n, std::mt19937_64& rng);

struct HypercheckSummary {
  int dim = 0;
  int samples = 0;
  int hyperbolic = 0;               ///< states passing every check
  int complete_bases = 0;           ///< eigenvector_count == 2n + 3
  double max_eigenvalue_mismatch = 0.0;
  double max_imag_part = 0.0;
  double max_factorization_defect = 0.0;  ///< only when factorization_lambdas > 0
  double min_root_gap = 0.0;        ///< smallest distance between consecutive quartic roots
  double seconds = 0.0;
  std::vector<std::string> failures;  ///< first few failing states, human readable
};

/// Runs analyse (and optionally the determinant factorization with `factorization_lambdas`
/// values of Lambda) on `samples` random admissible states and directions.
HypercheckSummary hypercheck(const ModelParams& p, int n, int samples, std::uint64_t seed,
                             int factorization_lambdas = 0, CouplingForm form = CouplingForm::printed);

struct CompensatorReport {
  double n_param = 0.0;
  double epsilon = 0.0;
  double antisymmetry_defect = 0.0;
  double m_min_eigenvalue = 0.0;
  int halvings = 0;
  bool success = false;
};

/// Compensator matrices at the equilibrium (1, 0, 1, 0, 0). n_param empty means automatic
/// (tau1 pbar_theta^2 / (2 kappa) + 1); eps empty means bisection from 1.
CompensatorReport kawashima_check(const ModelParams& p, std::optional<double> n_param = std::nullopt,
                                  std::optional<double> eps = std::nullopt, int num_directions = 32,
                                  std::uint64_t seed = 0);

/// Matrices used by kawashima_check, exposed for tests. All are (2n+3) square.
struct CompensatorMatrices {
  Eigen::MatrixXd a0, a_xi, b_xi, l, k_xi, m;
};
CompensatorMatrices compensator_matrices(const ModelParams& p, const SpaceVector<double>& xi, double n_param,
                                         double eps);

}  // namespace hyperns

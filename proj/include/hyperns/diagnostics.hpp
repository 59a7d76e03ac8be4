#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperns/eigenstructure.hpp"
#include "hyperns/field.hpp"

namespace hyperns {

struct Totals {
  double mass = 0.0;
  SpaceVector<double> momentum;
  double energy = 0.0;
};

/// Midpoint sums over interior cells in storage order.
Totals conserved_totals(const Field& f);

/// int x . (rho u) dx over the interior, x measured from the origin.
double functional_F(const Field& f);

/// int (E - Cv) dx; the equilibrium total energy density is Cv.
double functional_G(const Field& f, const ModelParams& p);

/// Largest |x| over cell centres whose primitive state differs from (1, 0, 1, 0, 0) by more than tol.
double support_radius(const Field& f, const ModelParams& p, double tol = 1e-12);

/// Max over cells and axes of max_i |u.xi - z_i|. Ghost cells are ignored.
double max_wave_speed(const Field& f, const ModelParams& p, CouplingForm form = CouplingForm::physical);

/// Max over faces of |u(c + e_a) - u(c)|_inf: the cell-to-cell velocity jump.
double max_velocity_jump(const Field& f, const ModelParams& p);
/// max_velocity_jump per unit length (difference surrogate of max |grad u|).
double max_velocity_gradient(const Field& f, const ModelParams& p);

/// Interior values of the primitive components (rho, u, theta, q, S2), storage order.
std::vector<Eigen::ArrayXd> primitive_components(const Field& f, const ModelParams& p);

/// Sum over k = 0..order of |grad^k g|^2 in L2 for every component g (centred differences,
/// periodic wrap or zero extension per the grid's boundary types).
double sobolev_norm2(const std::vector<Eigen::ArrayXd>& components, const Grid& g, int order);

/// Squared L2 norms |grad^k w|^2 (all ordered index sequences) of the deviation
/// w = (rho - 1, u, theta - 1, q, S2) for k = 0..max_order, one row per component of w.
/// Centred differences; out-of-range neighbours wrap on periodic axes and are zero otherwise.
Eigen::MatrixXd deviation_derivative_norms(const Field& f, const ModelParams& p, int max_order);

/// Discrete surrogate of the energy functional sup ||V - Vbar||_{H^3}^2 + int_0^t dissipation.
class SobolevEnergy {
 public:
  explicit SobolevEnergy(const ModelParams& p) : p_(p) {}
  /// Adds dt times the dissipation rate of `before` (left endpoint) and updates the supremum with `after`.
  void start(const Field& f);
  void advance(const Field& before, double dt, const Field& after);
  double value() const { return sup_ + integral_; }
  double sup_part() const { return sup_; }
  double integral_part() const { return integral_; }
  void restore(double sup, double integral) {
    sup_ = sup;
    integral_ = integral;
  }

  /// ||V - Vbar||_{H^3}^2 of one field.
  double h3_norm2(const Field& f) const;
  /// ||(grad rho, grad theta)||_{H^2}^2 + ||(q, S2)||_{H^3}^2 + ||grad u||_{H^3}^2.
  double dissipation_rate(const Field& f) const;

 private:
  ModelParams p_;
  double sup_ = 0.0;
  double integral_ = 0.0;
};

/// L2 norm of the temperature-equation residual between two states dt apart.
/// Time derivative: forward difference; spatial terms: centred differences of the average state.
double theta_equation_residual(const Field& before, const Field& after, const ModelParams& p);

struct BlowupLedger {
  int dim = 3;
  double M_support = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double max_rho0 = 0.0;
  double min_rho0 = 0.0;
  double u0_l2_squared = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  double F0 = 0.0, G0 = 0.0, W0 = 0.0;
  double f0_threshold = 0.0;  ///< F0 must exceed this
  double f0_sq_threshold = 0.0;  ///< F0^2 must reach this
  double budget_threshold = 0.0;  ///< c4 + c5 ||u0||^2 must not exceed this
  double sigma_sq_threshold = 0.0;  ///< sigma^2 must reach this
  bool f0_above_threshold = false;
  bool budget_small = false;
  bool f0_sq_above_threshold = false;
  bool sigma_large = false;
  bool g0_positive = false;       ///< G(0) > 0
  bool f0_above_printed_threshold = false;       ///< printed n = 3 threshold on F(0)
  bool gamma_below_5_3 = false;
  bool applicable = false;      ///< 1 < gamma < 5/3 and the dimension-dependent coefficient is positive

  /// Volume of the unit ball in R^n.
  static double unit_ball_volume(int n);
  /// Lower bound 2 (k - 1) c2 / c3 (1 + c2 t)^(k - 1), k = n + 2.
  double bound(double t) const;
};

/// Ledger of the blow-up argument for the initial field. M defaults to support_radius(f0).
BlowupLedger blowup_ledger(const Field& f0, const ModelParams& p, double sigma,
                           std::optional<double> M_support = std::nullopt);

struct MonitorRow {
  double t = 0.0;
  double F = 0.0;
  double bound = 0.0;
  bool satisfied = false;          ///< F >= 0.95 bound
  bool cauchy_schwarz = false;     ///< F^2 <= omega_n max rho0 (M + sigma t)^(n + 2) int rho u^2
  bool a_priori_support = false;      ///< (n omega_n / 2)(M + sigma t)^n <= c3 F^2 / (2 (1 + c2 t)^(n + 2))
  double budget_lhs = 0.0;         ///< weighted time integrals of q^2 and S2^2
  double budget_rhs = 0.0;         ///< c4 + c5 ||u0||^2
  double max_grad_u = 0.0;
};

/// Per-snapshot comparison of F(t) with the ledger's lower bound, plus the dissipation budget.
class BlowupMonitor {
 public:
  BlowupMonitor(const BlowupLedger& ledger, const ModelParams& p) : ledger_(ledger), p_(p) {}
  /// Adds dt times the q^2, S2^2 integrals of `before` to the budget, then records `after`.
  MonitorRow record(const Field& f);
  void accumulate(const Field& before, double dt);
  const std::vector<MonitorRow>& rows() const { return rows_; }
  const BlowupLedger& ledger() const { return ledger_; }
  double q_integral() const { return q_int_; }
  double s_integral() const { return s_int_; }
  /// Time of the first recorded state; the bound is evaluated at t - t0.
  std::optional<double> t0() const { return t0_; }
  void restore(double q_int, double s_int, double t0) {
    q_int_ = q_int;
    s_int_ = s_int;
    t0_ = t0;
  }

 private:
  BlowupLedger ledger_;
  std::optional<double> t0_;
  ModelParams p_;
  std::vector<MonitorRow> rows_;
  double q_int_ = 0.0;
  double s_int_ = 0.0;
};

}  // namespace hyperns

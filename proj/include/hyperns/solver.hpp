#pragma once

#include <optional>
#include <string>

#include "hyperns/eigenstructure.hpp"
#include "hyperns/field.hpp"

namespace hyperns {

enum class Integrator { ssp_rk2, ssp_rk3 };

struct SolverConfig {
  double cfl = 0.4;
  Integrator integrator = Integrator::ssp_rk2;
  double end_time = 1.0;
  long max_steps = -1;              ///< negative: unlimited
  std::optional<double> fixed_dt;   ///< rejected if it exceeds the stability limit
  bool classical = false;           ///< tau = 0 reference: q = -kappa grad theta, S2 = lambda div u
  bool enforce_box = true;          ///< abort on the first cell outside the admissible box
  int threads = 1;
};

/// Time-step limits; dt is their minimum (or the fixed step).
struct StepInfo {
  double dt = 0.0;
  double dt_cfl = 0.0;
  double dt_relax = 0.0;
  double dt_visc = 0.0;
};

/// Largest dt with dt * tanh(dt / (2 tau)) <= y (dt <= y when tau = 0).
double relaxation_dt_limit(double y, double tau);

/// Acoustic Rusanov speed of the split hyperbolic stage in direction xi: |u.xi| + c.
double rusanov_speed(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p);

/// Rusanov flux of the split hyperbolic stage in direction xi, conserved ordering
/// (rho, m, E, q, S2). The q and S2 entries carry the advective part (u.xi) q, (u.xi) S2.
SystemVector<double> conservative_flux(const ConservedState<double>& left, const ConservedState<double>& right,
                                       const Direction& xi, const ModelParams& p);

class Solver {
 public:
  Solver(const ModelParams& p, const SolverConfig& cfg);

  const ModelParams& params() const { return p_; }
  const SolverConfig& config() const { return cfg_; }
  void set_threads(int t) { cfg_.threads = t; }

  /// Stability limits evaluated at the current state (ghosts are refreshed).
  StepInfo stable_dt(Field& f);

  /// One step: Strang splitting relax(dt/2), transport(dt), relax(dt/2), or the classical
  /// reference step when configured. dt defaults to the stability limit clipped to end_time.
  StepInfo step(Field& f, std::optional<double> dt = std::nullopt);

  /// Time derivative of the split hyperbolic stage for interior cells (ghost columns zero).
  void hyperbolic_rhs(Field& f, Eigen::ArrayXXd& rhs);
  /// Viscous increment (added to rhs); no-op for mu = 0.
  void viscous_rhs(Field& f, Eigen::ArrayXXd& rhs);
  /// Exact relaxation of q and S2 over dt with frozen grad theta and div u.
  void relaxation_substep(Field& f, double dt);
  /// Overwrites q and S2 by the algebraic closures (classical reference).
  void apply_classical_closure(Field& f);

 private:
  void primitives(Field& f);
  void relax(Field& f, double dt, bool primitives_current);
  void transport(Field& f, double dt);

  ModelParams p_;
  SolverConfig cfg_;
  Eigen::ArrayXXd w_;     // primitive rows per padded cell: rho, u, theta, q, S2, p - S2, c
  Eigen::ArrayXXd rhs_, stage0_, stage1_;
  Eigen::ArrayXXd flux_;
};

/// Convenience wrappers with a throwaway solver (ghosts of a copy are filled).
Eigen::ArrayXXd hyperbolic_rhs(const Field& f, const ModelParams& p);
Eigen::ArrayXXd viscous_rhs(const Field& f, const ModelParams& p);
Field relaxation_substep(const Field& f, double dt, const ModelParams& p);
Field step(const Field& f, const SolverConfig& cfg, const ModelParams& p);
Field classical_reference_step(const Field& f, const SolverConfig& cfg, const ModelParams& p);

std::string to_string(Integrator i);
Integrator integrator_from_string(const std::string& s);

}  // namespace hyperns

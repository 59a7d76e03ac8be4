#pragma once

#include <optional>
#include <vector>

#include "hyperns/field.hpp"
#include "hyperns/thermo.hpp"

namespace hyperns {

template <typename Scalar>
struct EntropyDensities {
  Scalar eta;
  Scalar eta1;
  SpaceVector<Scalar> zeta;
  Scalar production;
};

template <typename Scalar>
Scalar physical_entropy(const PrimitiveState<Scalar>& s, const ModelParams& p) {
  using std::log;
  detail::require_positive(s.rho, s.theta);
  return Scalar(p.cv) * log(s.theta) - Scalar(p.r_gas) * log(s.rho) +
         Scalar(p.tau1) * s.q.squaredNorm() / (Scalar(2 * p.kappa) * s.theta * s.theta * s.rho);
}

/// grad_u(i, j) = d u_i / d x_j. D = grad u + grad u^T - (2/n) div u I.
template <typename Scalar>
SpaceMatrix<Scalar> deviatoric_rate(const SpaceMatrix<Scalar>& grad_u) {
  const auto n = grad_u.rows();
  SpaceMatrix<Scalar> d = grad_u + grad_u.transpose();
  d.diagonal().array() -= Scalar(2.0 / double(n)) * grad_u.trace();
  return d;
}

template <typename Scalar>
Scalar entropy_production(const PrimitiveState<Scalar>& s, const SpaceMatrix<Scalar>& grad_u,
                          const ModelParams& p) {
  detail::require_positive(s.rho, s.theta);
  Scalar r = s.q.squaredNorm() / (Scalar(p.kappa) * s.theta * s.theta) + s.s2 * s.s2 / (s.theta * Scalar(p.lambda));
  if (p.mu > 0) r += Scalar(p.mu) * deviatoric_rate(grad_u).squaredNorm() / (Scalar(2) * s.theta);
  return r;
}

/// Convex entropy density eta1, its flux zeta and the production rate. grad_u is required
/// only when mu > 0 (it enters zeta and the production); otherwise it may be omitted.
template <typename Scalar>
EntropyDensities<Scalar> dissipative_entropy(const PrimitiveState<Scalar>& s, const ModelParams& p,
                                             const std::optional<SpaceMatrix<Scalar>>& grad_u = std::nullopt) {
  using std::log;
  detail::require_positive(s.rho, s.theta);
  if (!(s.theta > Scalar(0.5))) throw DomainError("theta <= 1/2 is outside the convexity window of eta1");
  const int n = s.dim();
  const Scalar cv(p.cv), r(p.r_gas);
  const Scalar q2 = s.q.squaredNorm();
  const Scalar u2 = s.u.squaredNorm();
  const Scalar lnth = log(s.theta), lnrho = log(s.rho);
  const Scalar heat = (Scalar(1) - Scalar(1) / (Scalar(2) * s.theta)) * Scalar(p.tau1) * q2 / (Scalar(p.kappa) * s.theta);
  const Scalar stress = Scalar(p.tau3) * s.s2 * s.s2 / Scalar(2 * p.lambda);

  EntropyDensities<Scalar> e;
  e.eta = physical_entropy(s, p);
  e.eta1 = cv * s.rho * (s.theta - lnth - Scalar(1)) + r * (s.rho * lnrho - s.rho + Scalar(1)) + heat +
           Scalar(0.5) * s.rho * u2 + stress;
  const Scalar pr = pressure(s, p);
  const Scalar scalar_part = s.rho * cv * (s.theta - lnth - Scalar(1)) + heat + stress + r * s.rho * lnrho -
                             r * s.rho + Scalar(0.5) * s.rho * u2 + pr - s.s2;
  e.zeta = scalar_part * s.u - s.q / s.theta + s.q;
  const SpaceMatrix<Scalar> gu = grad_u.value_or(SpaceMatrix<Scalar>::Zero(n, n));
  if (p.mu > 0 && grad_u) e.zeta -= Scalar(p.mu) * deviatoric_rate(gu) * s.u;
  e.production = entropy_production(s, gu, p);
  return e;
}

struct AuditRow {
  double t = 0.0;
  double eta1_total = 0.0;
  double production_cum = 0.0;
  double residual = 0.0;
};

/// Running audit of  d/dt int eta1 + int production = 0  on periodic or compactly supported runs.
/// Quadrature is the midpoint rule on cell averages; the production time integral uses the
/// left endpoint of every step.
class EntropyAudit {
 public:
  explicit EntropyAudit(const ModelParams& p) : p_(p) {}

  /// Records t0 and the initial integral.
  void start(const Field& f);
  /// Adds dt * int production(before) and records the state after the step.
  void advance(const Field& before, double dt, const Field& after);
  /// Same as advance with a precomputed production integral at the left endpoint.
  void advance_with(double production_integral, double dt, const Field& after);

  const std::vector<AuditRow>& rows() const { return rows_; }
  double initial_integral() const { return rows_.empty() ? 0.0 : rows_.front().eta1_total; }
  /// max |residual| / int eta1(t0) (absolute when the initial integral vanishes).
  double max_relative_residual() const;

  /// Cumulative state for checkpoint/resume.
  double production_cum() const { return cum_; }
  void restore(std::vector<AuditRow> rows, double cum) {
    rows_ = std::move(rows);
    cum_ = cum;
  }

 private:
  ModelParams p_;
  std::vector<AuditRow> rows_;
  double cum_ = 0.0;
};

/// Midpoint-rule integral of eta1 over the interior cells.
double eta1_integral(const Field& f, const ModelParams& p);
/// Midpoint-rule integral of the production rate (centred velocity gradients when mu > 0).
double production_integral(const Field& f, const ModelParams& p);

/// Audit over a stored sequence of snapshots (times taken from the snapshots).
std::vector<AuditRow> discrete_entropy_audit(const std::vector<Field>& snapshots, const ModelParams& p);

}  // namespace hyperns

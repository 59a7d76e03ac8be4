#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hyperns/errors.hpp"
#include "hyperns/types.hpp"

namespace hyperns {

struct AdmissibleBox {
  double rho_min = 0.5;
  double rho_max = 2.0;
  double theta_min = 0.6;
  double theta_max = 2.0;
  double u_max = 1.0;
  double delta = 0.1;  ///< bound on |q| and |S2|
};

struct ModelParams {
  double tau1 = 1.0;
  double tau3 = 1.0;
  double kappa = 1.0;
  double lambda = 1.0;
  double mu = 0.0;
  double cv = 1.0;
  double r_gas = 1.0;
  int dim = 1;
  AdmissibleBox box;

  double gamma() const { return 1.0 + r_gas / cv; }

  /// Same constants with both relaxation times set to zero (Fourier / Newtonian closure).
  ModelParams classical() const {
    ModelParams c = *this;
    c.tau1 = 0.0;
    c.tau3 = 0.0;
    return c;
  }
};

/// Problems with the parameter set, each prefixed by its config path ("model.tau1: ...").
std::vector<std::string> validation_issues(const ModelParams& p);

/// Throws ConfigError when validation_issues is non-empty.
void validate(const ModelParams& p);

template <typename Scalar>
struct PrimitiveState {
  Scalar rho;
  SpaceVector<Scalar> u;
  Scalar theta;
  SpaceVector<Scalar> q;
  Scalar s2;

  int dim() const { return static_cast<int>(u.size()); }

  static PrimitiveState equilibrium(int n) {
    return {Scalar(1), SpaceVector<Scalar>::Zero(n), Scalar(1), SpaceVector<Scalar>::Zero(n), Scalar(0)};
  }
};

template <typename Scalar>
struct ConservedState {
  Scalar rho;
  SpaceVector<Scalar> mom;
  Scalar etot;
  SpaceVector<Scalar> q;
  Scalar s2;

  int dim() const { return static_cast<int>(mom.size()); }
};

template <typename Scalar>
struct ThermoPartials {
  Scalar p_rho;
  Scalar p_theta;
  SpaceVector<Scalar> p_q;
  Scalar p_s2;
  Scalar e_theta;
  Scalar e_rho;
};

namespace detail {

template <typename Scalar>
void require_positive(const Scalar& rho, const Scalar& theta) {
  if (!(rho > Scalar(0)) || !(theta > Scalar(0)))
    throw DomainError("density and temperature must be positive");
}

}  // namespace detail

template <typename Scalar>
Scalar internal_energy(const PrimitiveState<Scalar>& s, const ModelParams& p) {
  detail::require_positive(s.rho, s.theta);
  const Scalar q2 = s.q.squaredNorm();
  return Scalar(p.cv) * s.theta + Scalar(p.tau1) * q2 / (Scalar(p.kappa) * s.rho * s.theta) +
         Scalar(p.tau3) * s.s2 * s.s2 / (Scalar(2 * p.lambda) * s.rho);
}

template <typename Scalar>
Scalar pressure(const PrimitiveState<Scalar>& s, const ModelParams& p) {
  detail::require_positive(s.rho, s.theta);
  const Scalar q2 = s.q.squaredNorm();
  return Scalar(p.r_gas) * s.rho * s.theta - Scalar(p.tau1) * q2 / (Scalar(2 * p.kappa) * s.theta) -
         Scalar(p.tau3) * s.s2 * s.s2 / Scalar(2 * p.lambda);
}

template <typename Scalar>
ThermoPartials<Scalar> pressure_partials(const PrimitiveState<Scalar>& s, const ModelParams& p) {
  detail::require_positive(s.rho, s.theta);
  const Scalar q2 = s.q.squaredNorm();
  const Scalar a = Scalar(p.tau1) / Scalar(p.kappa);
  const Scalar b = Scalar(p.tau3) / Scalar(p.lambda);
  ThermoPartials<Scalar> d;
  d.p_rho = Scalar(p.r_gas) * s.theta;
  d.p_theta = Scalar(p.r_gas) * s.rho + a * q2 / (Scalar(2) * s.theta * s.theta);
  d.p_q = -(a / s.theta) * s.q;
  d.p_s2 = -b * s.s2;
  d.e_theta = Scalar(p.cv) - a * q2 / (s.rho * s.theta * s.theta);
  d.e_rho = -a * q2 / (s.rho * s.rho * s.theta) - b * s.s2 * s.s2 / (Scalar(2) * s.rho * s.rho);
  return d;
}

template <typename Scalar>
ConservedState<Scalar> primitive_to_conserved(const PrimitiveState<Scalar>& s, const ModelParams& p) {
  const Scalar e = internal_energy(s, p);
  return {s.rho, s.rho * s.u, s.rho * (e + Scalar(0.5) * s.u.squaredNorm()), s.q, s.s2};
}

/// Inverts the energy relation for theta, taking the root continuous with theta = e/Cv at q = 0.
template <typename Scalar>
PrimitiveState<Scalar> conserved_to_primitive(const ConservedState<Scalar>& c, const ModelParams& p) {
  using std::sqrt;
  if (!(c.rho > Scalar(0))) throw DomainError("density must be positive");
  PrimitiveState<Scalar> s{c.rho, c.mom / c.rho, Scalar(0), c.q, c.s2};
  const Scalar e = (c.etot - Scalar(0.5) * c.mom.squaredNorm() / c.rho) / c.rho;
  const Scalar a = e - Scalar(p.tau3) * c.s2 * c.s2 / (Scalar(2 * p.lambda) * c.rho);
  const Scalar b = p.tau1 > 0 ? Scalar(p.tau1) * c.q.squaredNorm() / (Scalar(p.kappa) * c.rho) : Scalar(0);
  const Scalar disc = a * a - Scalar(4 * p.cv) * b;
  if (!(a > Scalar(0)) || disc < Scalar(0))
    throw UnphysicalState("no positive temperature for the given conserved state");
  s.theta = (a + sqrt(disc)) / Scalar(2 * p.cv);
  return s;
}

/// Box membership used for "admissible" flags and run-time excursion checks.
template <typename Scalar>
bool in_box(const PrimitiveState<Scalar>& s, const AdmissibleBox& b) {
  return s.rho >= Scalar(b.rho_min) && s.rho <= Scalar(b.rho_max) && s.theta >= Scalar(b.theta_min) &&
         s.theta <= Scalar(b.theta_max) && s.u.norm() <= Scalar(b.u_max) && s.q.norm() <= Scalar(b.delta) &&
         std::abs(s.s2) <= Scalar(b.delta);
}

}  // namespace hyperns

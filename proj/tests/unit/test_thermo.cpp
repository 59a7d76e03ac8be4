#include <random>

#include "helpers.hpp"
#include "hyperns/eigenstructure.hpp"
#include "hyperns/errors.hpp"
#include "oracle_values.hpp"

using namespace hyperns;
using namespace testing;

TEST_CASE("internal energy examples") {
  ModelParams p = ones(3);
  CHECK(internal_energy(PrimitiveState<double>::equilibrium(3), p) == 1.0);
  CHECK(internal_energy(state(1, vec({0, 0, 0}), 2, vec({0, 0, 0}), 0), p) == 2.0);
  CHECK(internal_energy(state(1, vec({0, 0, 0}), 1, vec({0.2, 0, 0}), 0), p) == doctest::Approx(1.04).epsilon(1e-15));
}

TEST_CASE("pressure examples") {
  ModelParams p = ones(3);
  CHECK(pressure(PrimitiveState<double>::equilibrium(3), p) == 1.0);
  CHECK(pressure(state(2, vec({0, 0, 0}), 3, vec({0, 0, 0}), 0), p) == 6.0);
  p.lambda = 2;
  CHECK(pressure(state(1, vec({0, 0, 0}), 1, vec({1, 0, 0}), 1), p) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("partials at equilibrium and p_q example") {
  ModelParams p = ones(3);
  const auto d = pressure_partials(PrimitiveState<double>::equilibrium(3), p);
  CHECK(d.p_rho == 1.0);
  CHECK(d.p_theta == 1.0);
  CHECK(d.p_q.norm() == 0.0);
  CHECK(d.p_s2 == 0.0);
  CHECK(d.e_theta == 1.0);
  const auto d2 = pressure_partials(state(1, vec({0, 0, 0}), 1, vec({1, 0, 0}), 0), p);
  CHECK(d2.p_q(0) == -1.0);
  CHECK(d2.p_q(1) == 0.0);
}

TEST_CASE("conversions examples") {
  ModelParams p = ones(3);
  const auto c = primitive_to_conserved(PrimitiveState<double>::equilibrium(3), p);
  CHECK(c.rho == 1.0);
  CHECK(c.mom.norm() == 0.0);
  CHECK(c.etot == 1.0);
  CHECK(primitive_to_conserved(state(2, vec({1, 0, 0}), 1, vec({0, 0, 0}), 0), p).etot == 3.0);

  ConservedState<double> c2{1, vec({0, 0, 0}), 2, vec({0, 0, 0}), 0};
  CHECK(conserved_to_primitive(c2, p).theta == 2.0);
  ConservedState<double> c3{1, vec({0, 0, 0}), 1.04, vec({0.2, 0, 0}), 0};
  CHECK(conserved_to_primitive(c3, p).theta == doctest::Approx(1.0).epsilon(1e-14));
  ConservedState<double> bad{1, vec({0, 0, 0}), 0.01, vec({10, 0, 0}), 0};
  CHECK_THROWS_AS(conserved_to_primitive(bad, p), UnphysicalState);
}

TEST_CASE("domain errors") {
  ModelParams p = ones(1);
  CHECK_THROWS_AS(internal_energy(state(0, vec({0}), 1, vec({0}), 0), p), DomainError);
  CHECK_THROWS_AS(pressure(state(1, vec({0}), -1, vec({0}), 0), p), DomainError);
  CHECK_THROWS_AS(pressure_partials(state(-1, vec({0}), 1, vec({0}), 0), p), DomainError);
  ConservedState<double> c{0, vec({0}), 1, vec({0}), 0};
  CHECK_THROWS_AS(conserved_to_primitive(c, p), DomainError);
}

namespace {
ModelParams params_of(const oracle::ThermoCase& o) {
  ModelParams p;
  p.tau1 = o.tau1;
  p.tau3 = o.tau3;
  p.kappa = o.kappa;
  p.lambda = o.lambda;
  p.cv = o.cv;
  p.r_gas = o.r_gas;
  p.dim = 2;
  return p;
}
}  // namespace

TEST_CASE("symbolic oracle: energies, pressure and partials") {
  for (const auto& o : oracle::thermo_cases) {
    const ModelParams p = params_of(o);
    const auto s = state(o.rho, vec({o.u0, o.u1}), o.theta, vec({o.q0, o.q1}), o.s2);
    const auto d = pressure_partials(s, p);
    CHECK(rel_err(internal_energy(s, p), o.e) < 1e-14);
    CHECK(rel_err(pressure(s, p), o.p) < 1e-14);
    CHECK(rel_err(d.p_rho, o.p_rho) < 1e-14);
    CHECK(rel_err(d.p_theta, o.p_theta) < 1e-14);
    CHECK(rel_err(d.p_q(0), o.p_q0) < 1e-14);
    CHECK(rel_err(d.p_q(1), o.p_q1) < 1e-14);
    CHECK(rel_err(d.p_s2, o.p_s2) < 1e-14);
    CHECK(rel_err(d.e_theta, o.e_theta) < 1e-14);
    CHECK(rel_err(d.e_rho, o.e_rho) < 1e-14);
    CHECK(rel_err(primitive_to_conserved(s, p).etot, o.etot) < 1e-14);
  }
}

TEST_CASE("thermodynamic identity and round trip on 1e5 admissible states") {
  std::mt19937_64 rng(7);
  double worst_identity = 0.0, worst_trip = 0.0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = ones(n);
    p.tau1 = 0.7;
    p.kappa = 1.3;
    p.tau3 = 0.4;
    p.lambda = 0.9;
    p.cv = 1.5;
    p.r_gas = 0.6;
    const int count = n == 1 ? 40000 : 30000;
    for (int k = 0; k < count; ++k) {
      const auto s = sample_admissible_state(p, n, rng);
      const auto d = pressure_partials(s, p);
      const double lhs = s.rho * s.rho * d.e_rho;
      const double pr = pressure(s, p), tp = s.theta * d.p_theta;
      // Both sides are differences of O(p) terms, so relative means relative to that scale.
      worst_identity = std::max(worst_identity, std::abs(lhs - (pr - tp)) / (std::abs(pr) + std::abs(tp)));
      const auto back = conserved_to_primitive(primitive_to_conserved(s, p), p);
      double e = std::abs(back.rho - s.rho) / s.rho + std::abs(back.theta - s.theta) / s.theta;
      e += (back.u - s.u).norm() / std::max(1.0, s.u.norm()) + (back.q - s.q).norm() + std::abs(back.s2 - s.s2);
      worst_trip = std::max(worst_trip, e);
    }
  }
  CHECK(worst_identity < 1e-12);
  CHECK(worst_trip < 1e-12);
}

TEST_CASE("partials match central differences at second order") {
  std::mt19937_64 rng(11);
  ModelParams p = ones(2);
  p.tau1 = 0.8;
  p.tau3 = 0.5;
  for (int k = 0; k < 20; ++k) {
    const auto s = sample_admissible_state(p, 2, rng);
    const auto d = pressure_partials(s, p);
    auto fd = [&](auto perturb, auto f, double h) {
      auto a = s, b = s;
      perturb(a, h);
      perturb(b, -h);
      return (f(a) - f(b)) / (2 * h);
    };
    auto P = [&](const PrimitiveState<double>& x) { return pressure(x, p); };
    auto E = [&](const PrimitiveState<double>& x) { return internal_energy(x, p); };
    auto drho = [](PrimitiveState<double>& x, double h) { x.rho += h; };
    auto dth = [](PrimitiveState<double>& x, double h) { x.theta += h; };
    auto ds = [](PrimitiveState<double>& x, double h) { x.s2 += h; };
    auto dq0 = [](PrimitiveState<double>& x, double h) { x.q(0) += h; };
    struct Item {
      double exact, coarse, fine;
    };
    const double h = 1e-2;
    const Item items[] = {
        {d.p_rho, fd(drho, P, h), fd(drho, P, h / 2)},  {d.p_theta, fd(dth, P, h), fd(dth, P, h / 2)},
        {d.p_s2, fd(ds, P, h), fd(ds, P, h / 2)},       {d.p_q(0), fd(dq0, P, h), fd(dq0, P, h / 2)},
        {d.e_theta, fd(dth, E, h), fd(dth, E, h / 2)}, {d.e_rho, fd(drho, E, h), fd(drho, E, h / 2)},
    };
    for (const auto& it : items) {
      const double ec = std::abs(it.coarse - it.exact), ef = std::abs(it.fine - it.exact);
      // Richardson: halving h divides a second-order error by about 4.
      if (ec > 1e-11) CHECK(ec / ef > 3.5);
      CHECK(ef < 1e-3 * std::max(1.0, std::abs(it.exact)));
    }
  }
}

TEST_CASE("zero flux reduces to ideal gas") {
  std::mt19937_64 rng(3);
  ModelParams p = ones(3);
  p.cv = 2.5;
  p.r_gas = 0.4;
  for (int k = 0; k < 100; ++k) {
    auto s = sample_admissible_state(p, 3, rng);
    s.q.setZero();
    s.s2 = 0;
    CHECK(internal_energy(s, p) == p.cv * s.theta);
    CHECK(pressure(s, p) == p.r_gas * s.rho * s.theta);
  }
}

TEST_CASE("generic scalar type") {
  ModelParams p = ones(2);
  PrimitiveState<long double> s{1.0L, SpaceVector<long double>::Zero(2), 1.0L, SpaceVector<long double>::Zero(2),
                                0.0L};
  s.q(0) = 0.2L;
  CHECK(static_cast<double>(internal_energy(s, p)) == doctest::Approx(1.04).epsilon(1e-15));
  const auto c = primitive_to_conserved(s, p);
  CHECK(static_cast<double>(conserved_to_primitive(c, p).theta) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("model validation names the offending field") {
  ModelParams p = ones(1);
  p.tau1 = -1;
  const auto issues = validation_issues(p);
  REQUIRE(!issues.empty());
  CHECK(issues.front().find("tau1") != std::string::npos);
  ModelParams big = ones(1);
  big.box.delta = 0.9;  // |p_S2| = tau3 delta / lambda >= 1/2
  CHECK_THROWS_AS(validate(big), ConfigError);
  CHECK(validation_issues(ones(2)).empty());
  const auto c = ones(1).classical();
  CHECK(c.tau1 == 0.0);
  CHECK(c.tau3 == 0.0);
}

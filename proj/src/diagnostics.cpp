#include "hyperns/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "hyperns/entropy.hpp"

namespace hyperns {

namespace {

constexpr double kPi = std::numbers::pi;

// Interior values of one scalar, storage order with i fastest.
using Scalars = Eigen::ArrayXd;

Scalars centred_difference(const Scalars& g, const Grid& grid, int a) {
  const int n0 = grid.cells[0], n1 = grid.dim > 1 ? grid.cells[1] : 1, n2 = grid.dim > 2 ? grid.cells[2] : 1;
  const int dims[3] = {n0, n1, n2};
  const long strides[3] = {1, n0, long(n0) * n1};
  const bool periodic = grid.boundary[a] == Boundary::periodic;
  const double inv = 1.0 / (2.0 * grid.dx(a));
  Scalars out(g.size());
  for (int k = 0; k < n2; ++k)
    for (int j = 0; j < n1; ++j)
      for (int i = 0; i < n0; ++i) {
        const int idx[3] = {i, j, k};
        const long c = i + strides[1] * j + strides[2] * k;
        const int pos = idx[a], len = dims[a];
        auto at = [&](int q) -> double {
          if (q < 0 || q >= len) {
            if (!periodic) return 0.0;
            q = (q + len) % len;
          }
          return g(c + (q - pos) * strides[a]);
        };
        out(c) = (at(pos + 1) - at(pos - 1)) * inv;
      }
  return out;
}

std::vector<Scalars> deviations(const Field& f, const ModelParams& p) {
  auto w = primitive_components(f, p);
  const int n = f.grid().dim;
  w[0] -= 1.0;
  w[n + 1] -= 1.0;
  return w;
}

}  // namespace

std::vector<Eigen::ArrayXd> primitive_components(const Field& f, const ModelParams& p) {
  const int n = f.grid().dim;
  const long cells = static_cast<long>(f.grid().interior_count());
  std::vector<Scalars> w(2 * n + 3, Scalars(cells));
  long k = 0;
  for_each_interior(f.grid(), [&](long c, int, int, int) {
    const auto s = f.primitive(c, p);
    w[0](k) = s.rho;
    for (int d = 0; d < n; ++d) {
      w[1 + d](k) = s.u(d);
      w[n + 2 + d](k) = s.q(d);
    }
    w[n + 1](k) = s.theta;
    w[2 * n + 2](k) = s.s2;
    ++k;
  });
  return w;
}

double sobolev_norm2(const std::vector<Eigen::ArrayXd>& components, const Grid& g, int order) {
  double total = 0.0;
  for (const auto& comp : components) {
    std::vector<Scalars> level{comp};
    for (int k = 0; k <= order; ++k) {
      for (const auto& a : level) total += a.square().sum();
      if (k == order) break;
      std::vector<Scalars> next;
      next.reserve(level.size() * g.dim);
      for (const auto& a : level)
        for (int ax = 0; ax < g.dim; ++ax) next.push_back(centred_difference(a, g, ax));
      level = std::move(next);
    }
  }
  return total * g.cell_volume();
}

Totals conserved_totals(const Field& f) {
  const int n = f.grid().dim;
  const FieldLayout l{n};
  Totals t;
  t.momentum = SpaceVector<double>::Zero(n);
  const auto& u = f.data();
  for_each_interior(f.grid(), [&](long c, int, int, int) {
    t.mass += u(l.rho(), c);
    t.energy += u(l.energy(), c);
    for (int d = 0; d < n; ++d) t.momentum(d) += u(l.mom(d), c);
  });
  const double v = f.grid().cell_volume();
  t.mass *= v;
  t.energy *= v;
  t.momentum *= v;
  return t;
}

double functional_F(const Field& f) {
  const Grid& g = f.grid();
  const FieldLayout l{g.dim};
  double sum = 0.0;
  for_each_interior(g, [&](long c, int i, int j, int k) {
    const auto x = cell_position(g, i, j, k);
    for (int d = 0; d < g.dim; ++d) sum += x(d) * f.data()(l.mom(d), c);
  });
  return sum * g.cell_volume();
}

double functional_G(const Field& f, const ModelParams& p) {
  const FieldLayout l{f.grid().dim};
  double sum = 0.0;
  for_each_interior(f.grid(), [&](long c, int, int, int) { sum += f.data()(l.energy(), c) - p.cv; });
  return sum * f.grid().cell_volume();
}

double support_radius(const Field& f, const ModelParams& p, double tol) {
  const Grid& g = f.grid();
  double r = 0.0;
  for_each_interior(g, [&](long c, int i, int j, int k) {
    const auto s = f.primitive(c, p);
    const double dev = std::max({std::abs(s.rho - 1.0), std::abs(s.theta - 1.0), s.u.cwiseAbs().maxCoeff(),
                                 s.q.cwiseAbs().maxCoeff(), std::abs(s.s2)});
    if (dev > tol) r = std::max(r, cell_position(g, i, j, k).norm());
  });
  return r;
}

double max_wave_speed(const Field& f, const ModelParams& p, CouplingForm form) {
  const Grid& g = f.grid();
  double sigma = 0.0;
  for_each_interior(g, [&](long c, int, int, int) {
    const auto s = f.primitive(c, p);
    for (int a = 0; a < g.dim; ++a) sigma = std::max(sigma, pointwise_max_speed(s, Direction::axis(g.dim, a), p, form));
  });
  return sigma;
}

namespace {

template <typename Reduce>
double velocity_jumps(const Field& f, Reduce&& scale) {
  const Grid& g = f.grid();
  const FieldLayout l{g.dim};
  Field h = f;
  fill_ghosts(h);
  const auto& u = h.data();
  double m = 0.0;
  for_each_interior(g, [&](long c, int, int, int) {
    for (int a = 0; a < g.dim; ++a) {
      const long nb = c + g.stride(a);
      for (int d = 0; d < g.dim; ++d) {
        const double jump = std::abs(u(l.mom(d), nb) / u(l.rho(), nb) - u(l.mom(d), c) / u(l.rho(), c));
        m = std::max(m, jump * scale(a));
      }
    }
  });
  return m;
}

}  // namespace

double max_velocity_jump(const Field& f, const ModelParams&) {
  return velocity_jumps(f, [](int) { return 1.0; });
}

double max_velocity_gradient(const Field& f, const ModelParams&) {
  return velocity_jumps(f, [&](int a) { return 1.0 / f.grid().dx(a); });
}

Eigen::MatrixXd deviation_derivative_norms(const Field& f, const ModelParams& p, int max_order) {
  const Grid& g = f.grid();
  const auto w = deviations(f, p);
  const double vol = g.cell_volume();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(w.size()), max_order + 1);
  for (std::size_t v = 0; v < w.size(); ++v) {
    std::vector<Scalars> level{w[v]};
    for (int k = 0; k <= max_order; ++k) {
      double sum = 0.0;
      for (const auto& a : level) sum += a.square().sum();
      out(static_cast<Eigen::Index>(v), k) = sum * vol;
      if (k == max_order) break;
      std::vector<Scalars> next;
      next.reserve(level.size() * g.dim);
      for (const auto& a : level)
        for (int ax = 0; ax < g.dim; ++ax) next.push_back(centred_difference(a, g, ax));
      level = std::move(next);
    }
  }
  return out;
}

double SobolevEnergy::h3_norm2(const Field& f) const { return deviation_derivative_norms(f, p_, 3).sum(); }

double SobolevEnergy::dissipation_rate(const Field& f) const {
  const int n = f.grid().dim;
  const Eigen::MatrixXd m = deviation_derivative_norms(f, p_, 4);
  double r = 0.0;
  for (int k = 1; k <= 3; ++k) r += m(0, k) + m(n + 1, k);
  for (int k = 0; k <= 3; ++k) {
    r += m(2 * n + 2, k);
    for (int d = 0; d < n; ++d) r += m(n + 2 + d, k);
  }
  for (int k = 1; k <= 4; ++k)
    for (int d = 0; d < n; ++d) r += m(1 + d, k);
  return r;
}

void SobolevEnergy::start(const Field& f) {
  sup_ = h3_norm2(f);
  integral_ = 0.0;
}

void SobolevEnergy::advance(const Field& before, double dt, const Field& after) {
  integral_ += dt * dissipation_rate(before);
  sup_ = std::max(sup_, h3_norm2(after));
}

double theta_equation_residual(const Field& before, const Field& after, const ModelParams& p) {
  const double dt = after.t - before.t;
  if (!(dt > 0)) throw DomainError("theta residual needs two states with increasing time");
  const Grid& g = before.grid();
  const int n = g.dim;
  Field b = before, a = after;
  fill_ghosts(b);
  fill_ghosts(a);
  const long cells = static_cast<long>(g.padded_count());
  std::vector<PrimitiveState<double>> mid(cells);
  std::vector<double> th0(cells), th1(cells);
  for (long c = 0; c < cells; ++c) {
    const auto s0 = b.primitive(c, p), s1 = a.primitive(c, p);
    mid[c] = {0.5 * (s0.rho + s1.rho), 0.5 * (s0.u + s1.u), 0.5 * (s0.theta + s1.theta), 0.5 * (s0.q + s1.q),
              0.5 * (s0.s2 + s1.s2)};
    th0[c] = s0.theta;
    th1[c] = s1.theta;
  }
  double sum = 0.0;
  for_each_interior(g, [&](long c, int, int, int) {
    const auto& s = mid[c];
    const auto d = pressure_partials(s, p);
    SpaceVector<double> grad_theta(n), div_parts(n);
    SpaceMatrix<double> gu(n, n);
    double div_q = 0.0;
    for (int ax = 0; ax < n; ++ax) {
      const long st = g.stride(ax);
      const double h2 = 2.0 * g.dx(ax);
      grad_theta(ax) = (mid[c + st].theta - mid[c - st].theta) / h2;
      div_q += (mid[c + st].q(ax) - mid[c - st].q(ax)) / h2;
      for (int i = 0; i < n; ++i) gu(i, ax) = (mid[c + st].u(i) - mid[c - st].u(i)) / h2;
    }
    const double theta_t = (th1[c] - th0[c]) / dt;
    double r = s.rho * d.e_theta * theta_t + (s.rho * d.e_theta * s.u - 2.0 * s.q / s.theta).dot(grad_theta) +
               s.theta * d.p_theta * gu.trace() + div_q - 2.0 * s.q.squaredNorm() / (p.kappa * s.theta) -
               s.s2 * s.s2 / p.lambda;
    if (p.mu > 0) r -= 0.5 * p.mu * deviatoric_rate(gu).squaredNorm();
    sum += r * r;
  });
  return std::sqrt(sum * g.cell_volume());
}

double BlowupLedger::unit_ball_volume(int n) {
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return kPi;
    default:
      return 4.0 * kPi / 3.0;
  }
}

double BlowupLedger::bound(double t) const {
  const int k = dim + 2;
  return 2.0 * (k - 1) * c2 / c3 * std::pow(1.0 + c2 * t, k - 1);
}

BlowupLedger blowup_ledger(const Field& f0, const ModelParams& p, double sigma, std::optional<double> M_support) {
  const Grid& g = f0.grid();
  BlowupLedger L;
  L.dim = g.dim;
  const int n = g.dim, k = n + 2;
  L.sigma = sigma;
  L.gamma = p.gamma();
  L.M_support = M_support.value_or(support_radius(f0, p));
  L.max_rho0 = -std::numeric_limits<double>::infinity();
  L.min_rho0 = std::numeric_limits<double>::infinity();
  double w0 = 0.0, u2 = 0.0;
  for_each_interior(g, [&](long c, int, int, int) {
    const auto s = f0.primitive(c, p);
    L.max_rho0 = std::max(L.max_rho0, s.rho);
    L.min_rho0 = std::min(L.min_rho0, s.rho);
    const double kinetic = 0.5 * s.rho * s.u.squaredNorm();
    w0 += dissipative_entropy(s, p).eta1 - kinetic;
    u2 += s.u.squaredNorm();
  });
  const double vol = g.cell_volume();
  L.W0 = w0 * vol;
  L.u0_l2_squared = u2 * vol;
  L.F0 = functional_F(f0);
  L.G0 = functional_G(f0, p);

  const double omega = BlowupLedger::unit_ball_volume(n);
  const double a_n = (2.0 - n * (L.gamma - 1.0)) / 2.0;
  const double M = L.M_support;
  L.c3 = a_n / (omega * L.max_rho0 * std::pow(M, k));
  L.c2 = sigma / M;
  L.c1 = (k - 1) * L.c2 / L.c3;
  const double coef = 8.0 * p.tau1 * L.gamma + 2.0 * p.tau3 * L.gamma + p.lambda;  // thetabar = 1
  L.c4 = n / (L.c1 * L.c1) * coef * L.W0;
  L.c5 = n / (L.c1 * L.c1) * coef * L.max_rho0 / 2.0;

  L.f0_threshold = 4.0 * (k - 1) * L.c2 / L.c3;
  L.budget_threshold = L.c3 / (4.0 * (k - 1) * L.c2);
  L.f0_sq_threshold = 2.0 * n * omega * std::pow(M, n) / L.c3;
  L.sigma_sq_threshold = n * a_n / (2.0 * (k - 1) * (k - 1) * L.max_rho0);
  L.f0_above_threshold = L.F0 > L.f0_threshold;
  L.budget_small = L.c4 + L.c5 * L.u0_l2_squared <= L.budget_threshold;
  L.f0_sq_above_threshold = L.F0 * L.F0 >= L.f0_sq_threshold;
  L.sigma_large = sigma * sigma >= L.sigma_sq_threshold;
  L.g0_positive = L.G0 > 0;
  if (n == 3) {
    const double d = 3.0 * (5.0 - 3.0 * L.gamma);
    L.f0_above_printed_threshold = d > 0 && L.F0 > std::max(128.0 * sigma * L.max_rho0 / d, 8.0 * std::sqrt(kPi * L.max_rho0) / std::sqrt(d)) *
                                     std::pow(M, 4);
  } else {
    L.f0_above_printed_threshold = L.F0 > std::max(L.f0_threshold, std::sqrt(std::max(L.f0_sq_threshold, 0.0)));
  }
  L.gamma_below_5_3 = L.gamma > 1.0 && L.gamma < 5.0 / 3.0;
  L.applicable = L.gamma_below_5_3 && a_n > 0;
  return L;
}

void BlowupMonitor::accumulate(const Field& before, double dt) {
  double q2 = 0.0, s2 = 0.0;
  for_each_interior(before.grid(), [&](long c, int, int, int) {
    const auto cs = before.conserved(c);
    q2 += cs.q.squaredNorm();
    s2 += cs.s2 * cs.s2;
  });
  const double vol = before.grid().cell_volume();
  q_int_ += dt * q2 * vol;
  s_int_ += dt * s2 * vol;
}

MonitorRow BlowupMonitor::record(const Field& f) {
  const BlowupLedger& L = ledger_;
  const int n = L.dim;
  if (!t0_) t0_ = f.t;
  const double t = f.t - *t0_;
  MonitorRow r;
  r.t = f.t;
  r.F = functional_F(f);
  r.bound = L.bound(t);
  r.satisfied = r.F >= 0.95 * r.bound;
  double kinetic2 = 0.0;
  for_each_interior(f.grid(), [&](long c, int, int, int) {
    const auto cs = f.conserved(c);
    kinetic2 += cs.mom.squaredNorm() / cs.rho;
  });
  kinetic2 *= f.grid().cell_volume();
  const double omega = BlowupLedger::unit_ball_volume(n);
  const double radius = L.M_support + L.sigma * t;
  r.cauchy_schwarz = r.F * r.F <= omega * L.max_rho0 * std::pow(radius, n + 2) * kinetic2 * (1.0 + 1e-12);
  r.a_priori_support = 0.5 * n * omega * std::pow(radius, n) <= L.c3 * r.F * r.F / (2.0 * std::pow(1.0 + L.c2 * t, n + 2));
  const double c1sq = L.c1 * L.c1;
  r.budget_lhs = 2.0 * n * p_.tau1 * L.gamma / (c1sq * p_.kappa) * q_int_ +
                 n * (2.0 * p_.tau3 * L.gamma + p_.lambda) / (2.0 * c1sq * p_.lambda) * s_int_;
  r.budget_rhs = L.c4 + L.c5 * L.u0_l2_squared;
  r.max_grad_u = max_velocity_gradient(f, p_);
  rows_.push_back(r);
  return r;
}

}  // namespace hyperns

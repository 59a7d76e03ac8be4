#include "hyperns/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hyperns/parallel.hpp"

namespace hyperns {

namespace {

// Rows of the primitive work array.
struct PrimLayout {
  int n;
  int size() const { return 2 * n + 5; }
  int rho() const { return 0; }
  int u(int d) const { return 1 + d; }
  int theta() const { return n + 1; }
  int q(int d) const { return n + 2 + d; }
  int s2() const { return 2 * n + 2; }
  int peff() const { return 2 * n + 3; }  // p - S2
  int c() const { return 2 * n + 4; }     // split-stage sound speed
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe_cell(const Grid& g, long cell) {
  std::ostringstream os;
  long rem = cell;
  int idx[3] = {0, 0, 0};
  for (int a = g.dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(rem / g.stride(a)) - Grid::ghost;
    rem %= g.stride(a);
  }
  os << "cell (";
  for (int a = 0; a < g.dim; ++a) os << (a ? ", " : "") << idx[a];
  os << ")";
  return os.str();
}

// Model constants hoisted out of the per-cell loops.
struct Coefficients {
  double cv, r_gas, inv_2cv, q_weight, s_weight;  // q_weight = tau1 / kappa, s_weight = tau3 / lambda
  explicit Coefficients(const ModelParams& p)
      : cv(p.cv),
        r_gas(p.r_gas),
        inv_2cv(0.5 / p.cv),
        q_weight(p.tau1 > 0 ? p.tau1 / p.kappa : 0.0),
        s_weight(p.tau3 > 0 ? p.tau3 / p.lambda : 0.0) {}
};

// Fills one primitive column from one conserved column; returns false when no positive theta exists.
inline bool to_primitive(const double* u, double* w, int n, const Coefficients& k) {
  const double rho = u[0];
  if (!(rho > 0)) return false;
  const double inv_rho = 1.0 / rho;
  double m2 = 0.0, q2 = 0.0;
  for (int d = 0; d < n; ++d) {
    m2 += u[1 + d] * u[1 + d];
    q2 += u[n + 2 + d] * u[n + 2 + d];
  }
  const double s2 = u[2 * n + 2];
  const double hq = k.q_weight * q2;  // tau1 |q|^2 / kappa
  const double hs = k.s_weight * s2 * s2;
  const double e = (u[n + 1] - 0.5 * m2 * inv_rho) * inv_rho;
  const double a = e - 0.5 * hs * inv_rho;
  const double disc = a * a - 4.0 * k.cv * hq * inv_rho;
  if (!(a > 0) || !(disc >= 0)) return false;
  const double theta = (a + std::sqrt(disc)) * k.inv_2cv;
  const double inv_theta = 1.0 / theta;
  const double hq_t2 = hq * inv_theta * inv_theta;
  const double pres = k.r_gas * rho * theta - 0.5 * hq * inv_theta - 0.5 * hs;
  const double p_theta = k.r_gas * rho + 0.5 * hq_t2;
  const double e_theta = k.cv - hq_t2 * inv_rho;
  const double c2 = k.r_gas * theta + p_theta * (theta * p_theta - s2) * inv_rho * inv_rho / e_theta;
  if (!(e_theta > 0) || !(c2 > 0)) return false;
  w[0] = rho;
  for (int d = 0; d < n; ++d) {
    w[1 + d] = u[1 + d] * inv_rho;
    w[n + 2 + d] = u[n + 2 + d];
  }
  w[n + 1] = theta;
  w[2 * n + 2] = s2;
  w[2 * n + 3] = pres - s2;
  w[2 * n + 4] = std::sqrt(c2);
  return true;
}

long line_count(const Grid& g, int axis) {
  long c = 1;
  for (int b = 0; b < g.dim; ++b)
    if (b != axis) c *= g.cells[b];
  return c;
}

long line_start(const Grid& g, int axis, long line) {
  const int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
  const int n1 = b1 < g.dim ? g.cells[b1] : 1;
  const long j1 = line % n1, j2 = line / n1;
  const long o1 = b1 < g.dim ? Grid::ghost : 0, o2 = b2 < g.dim ? Grid::ghost : 0;
  return (j1 + o1) * g.stride(b1) + (j2 + o2) * g.stride(b2) + Grid::ghost * g.stride(axis);
}

}  // namespace

double relaxation_dt_limit(double y, double tau) {
  if (!(y > 0)) return 0.0;
  if (y == kInf) return kInf;
  if (!(tau > 0)) return y;
  auto f = [tau](double dt) { return dt * std::tanh(dt / (2.0 * tau)); };
  double lo = 0.0, hi = y;
  while (f(hi) < y) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= y ? lo : hi) = mid;
  }
  return lo;
}

double rusanov_speed(const PrimitiveState<double>& s, const Direction& xi, const ModelParams& p) {
  const auto d = pressure_partials(s, p);
  const double c2 = split_sound_speed_squared(s, d);
  if (!(c2 > 0) || !(d.e_theta > 0)) throw DomainError("split-stage sound speed is not real");
  return std::abs(s.u.dot(xi.xi())) + std::sqrt(c2);
}

SystemVector<double> conservative_flux(const ConservedState<double>& left, const ConservedState<double>& right,
                                       const Direction& dir, const ModelParams& p) {
  const int n = dir.dim();
  const FieldLayout l{n};
  const SpaceVector<double>& xi = dir.xi();
  auto physical = [&](const ConservedState<double>& c, SystemVector<double>& f, SystemVector<double>& u) {
    const auto s = conserved_to_primitive(c, p);
    const double un = s.u.dot(xi);
    const double peff = pressure(s, p) - s.s2;
    f.resize(l.size());
    u.resize(l.size());
    f(l.rho()) = c.rho * un;
    u(l.rho()) = c.rho;
    for (int d = 0; d < n; ++d) {
      f(l.mom(d)) = c.mom(d) * un + peff * xi(d);
      f(l.q(d)) = un * c.q(d);
      u(l.mom(d)) = c.mom(d);
      u(l.q(d)) = c.q(d);
    }
    f(l.energy()) = un * (c.etot + peff) + s.q.dot(xi);
    f(l.s2()) = un * c.s2;
    u(l.energy()) = c.etot;
    u(l.s2()) = c.s2;
    return rusanov_speed(s, dir, p);
  };
  SystemVector<double> fl, fr, ul, ur;
  const double sl = physical(left, fl, ul);
  const double sr = physical(right, fr, ur);
  return 0.5 * (fl + fr) - 0.5 * std::max(sl, sr) * (ur - ul);
}

Solver::Solver(const ModelParams& p, const SolverConfig& cfg) : p_(cfg.classical ? p.classical() : p), cfg_(cfg) {
  if (!(cfg.cfl > 0 && cfg.cfl <= 0.9)) throw ConfigError({"solver.cfl: must satisfy 0 < cfl <= 0.9"});
}

void Solver::primitives(Field& f) {
  const int n = f.grid().dim;
  const int nv = f.nvar();
  const PrimLayout pl{n};
  const long cells = static_cast<long>(f.grid().padded_count());
  if (w_.rows() != pl.size() || w_.cols() != cells) w_.resize(pl.size(), cells);
  const double* u = f.data().data();
  double* w = w_.data();
  const Coefficients k(p_);
  parallel_for(0, cells, cfg_.threads, [&](long lo, long hi) {
    for (long c = lo; c < hi; ++c)
      if (!to_primitive(u + c * nv, w + c * pl.size(), n, k)) {
        std::ostringstream os;
        os << "no admissible primitive state at " << describe_cell(f.grid(), c) << ": conserved = ["
           << f.data().col(c).transpose() << "]";
        throw InadmissibleState(os.str(), c);
      }
  });
}

StepInfo Solver::stable_dt(Field& f) {
  fill_ghosts(f);
  primitives(f);
  const Grid& g = f.grid();
  const int n = g.dim;
  const PrimLayout pl{n};
  double inv_dx2 = 0.0, dx_min = kInf;
  for (int a = 0; a < n; ++a) {
    inv_dx2 += 1.0 / (g.dx(a) * g.dx(a));
    dx_min = std::min(dx_min, g.dx(a));
  }
  double max_rate = 0.0, max_heat = 0.0, max_stress = 0.0, rho_min = kInf;
  const AdmissibleBox& box = p_.box;
  long bad = -1;
  for_each_interior(g, [&](long c, int, int, int) {
    const double rho = w_(pl.rho(), c), theta = w_(pl.theta(), c), s2 = w_(pl.s2(), c);
    double rate = 0.0, u2 = 0.0, q2 = 0.0;
    for (int a = 0; a < n; ++a) {
      rate += (std::abs(w_(pl.u(a), c)) + w_(pl.c(), c)) / g.dx(a);
      u2 += w_(pl.u(a), c) * w_(pl.u(a), c);
      q2 += w_(pl.q(a), c) * w_(pl.q(a), c);
    }
    const double hq = p_.tau1 > 0 ? p_.tau1 * q2 / p_.kappa : 0.0;
    const double e_theta = p_.cv - hq / (rho * theta * theta);
    const double p_s2 = p_.tau3 > 0 ? -p_.tau3 * s2 / p_.lambda : 0.0;
    max_rate = std::max(max_rate, rate);
    max_heat = std::max(max_heat, p_.kappa / (rho * e_theta));
    max_stress = std::max(max_stress, p_.lambda * (1.0 - p_s2) / rho);
    rho_min = std::min(rho_min, rho);
    if (cfg_.enforce_box && bad < 0 &&
        !(rho >= box.rho_min && rho <= box.rho_max && theta >= box.theta_min && theta <= box.theta_max &&
          std::sqrt(u2) <= box.u_max && std::sqrt(q2) <= box.delta && std::abs(s2) <= box.delta))
      bad = c;
  });
  if (bad >= 0) {
    std::ostringstream os;
    const auto s = f.primitive(bad, p_);
    os << "state left the admissible box at " << describe_cell(g, bad) << ", t = " << f.t << ": rho = " << s.rho
       << ", u = [" << s.u.transpose() << "], theta = " << s.theta << ", q = [" << s.q.transpose()
       << "], S2 = " << s.s2;
    throw InadmissibleState(os.str(), bad);
  }
  StepInfo info;
  info.dt_cfl = max_rate > 0 ? cfg_.cfl / max_rate : kInf;
  info.dt_relax = std::min(relaxation_dt_limit(1.0 / (max_heat * inv_dx2), p_.tau1),
                           relaxation_dt_limit(1.0 / (max_stress * inv_dx2), p_.tau3));
  info.dt_visc = kInf;
  if (p_.mu > 0 && n >= 2) {
    const double factor = 1.0 + std::abs(n - 2.0) / n;
    info.dt_visc = std::min(0.25 * rho_min / (p_.mu * factor * inv_dx2), 0.25 * dx_min * dx_min / p_.mu);
  }
  info.dt = std::min({info.dt_cfl, info.dt_relax, info.dt_visc});
  return info;
}

void Solver::hyperbolic_rhs(Field& f, Eigen::ArrayXXd& rhs) {
  const Grid& g = f.grid();
  const int n = g.dim;
  const int nv = f.nvar();
  const FieldLayout l{n};
  const PrimLayout pl{n};
  const int nw = pl.size();
  const int nf = nv + 1;  // fluxes plus face-averaged normal velocity
  const long cells = static_cast<long>(g.padded_count());
  fill_ghosts(f);
  if (cfg_.classical) apply_classical_closure(f);
  primitives(f);
  rhs.setZero(nv, cells);
  if (flux_.rows() != nf || flux_.cols() != cells) flux_.resize(nf, cells);

  const double* U = f.data().data();
  const double* W = w_.data();
  double* F = flux_.data();
  double* R = rhs.data();
  const bool viscous = p_.mu > 0 && n >= 2;

  for (int a = 0; a < n; ++a) {
    const long s = g.stride(a);
    const int len = g.cells[a];
    const double inv_dx = 1.0 / g.dx(a);
    // Face between cell c (left) and c + s (right), stored at column c.
    auto face = [&](long c) {
      const double* ul = U + c * nv;
      const double* ur = U + (c + s) * nv;
      const double* wl = W + c * nw;
      const double* wr = W + (c + s) * nw;
      double* fo = F + c * nf;
      const double unl = wl[pl.u(a)], unr = wr[pl.u(a)];
      const double sp = std::max(std::abs(unl) + wl[pl.c()], std::abs(unr) + wr[pl.c()]);
      auto rus = [&](double fl, double fr, double cl, double cr) { return 0.5 * (fl + fr) - 0.5 * sp * (cr - cl); };
      fo[l.rho()] = rus(ul[l.rho()] * unl, ur[l.rho()] * unr, ul[l.rho()], ur[l.rho()]);
      for (int d = 0; d < n; ++d) {
        const double pl_d = d == a ? wl[pl.peff()] : 0.0, pr_d = d == a ? wr[pl.peff()] : 0.0;
        fo[l.mom(d)] = rus(ul[l.mom(d)] * unl + pl_d, ur[l.mom(d)] * unr + pr_d, ul[l.mom(d)], ur[l.mom(d)]);
        fo[l.q(d)] = rus(unl * ul[l.q(d)], unr * ur[l.q(d)], ul[l.q(d)], ur[l.q(d)]);
      }
      fo[l.energy()] = rus(unl * (ul[l.energy()] + wl[pl.peff()]) + wl[pl.q(a)],
                           unr * (ur[l.energy()] + wr[pl.peff()]) + wr[pl.q(a)], ul[l.energy()], ur[l.energy()]);
      fo[l.s2()] = rus(unl * ul[l.s2()], unr * ur[l.s2()], ul[l.s2()], ur[l.s2()]);
      fo[nv] = 0.5 * (unl + unr);

      if (viscous) {
        // Face velocity gradient: compact normal difference, averaged centred tangential ones.
        double gu[kMaxDim][kMaxDim];
        for (int i = 0; i < n; ++i)
          for (int b = 0; b < n; ++b) {
            if (b == a) {
              gu[i][b] = (wr[pl.u(i)] - wl[pl.u(i)]) * inv_dx;
            } else {
              const long t = g.stride(b);
              gu[i][b] = (W[(c + t) * nw + pl.u(i)] - W[(c - t) * nw + pl.u(i)] + W[(c + s + t) * nw + pl.u(i)] -
                          W[(c + s - t) * nw + pl.u(i)]) /
                         (4.0 * g.dx(b));
            }
          }
        double div = 0.0;
        for (int i = 0; i < n; ++i) div += gu[i][i];
        double work = 0.0;
        for (int i = 0; i < n; ++i) {
          const double s1 = p_.mu * (gu[i][a] + gu[a][i] - (i == a ? 2.0 / n * div : 0.0));
          fo[l.mom(i)] -= s1;
          work += s1 * 0.5 * (wl[pl.u(i)] + wr[pl.u(i)]);
        }
        fo[l.energy()] -= work;
      }
    };

    const long lines = line_count(g, a);
    parallel_for(0, lines, cfg_.threads, [&](long lo, long hi) {
      for (long line = lo; line < hi; ++line) {
        const long first = line_start(g, a, line);
        for (int i = -1; i < len; ++i) face(first + i * s);
        for (int i = 0; i < len; ++i) {
          const long c = first + i * s;
          const double* fr = F + c * nf;
          const double* fl = F + (c - s) * nf;
          const double* wc = W + c * nw;
          double* r = R + c * nv;
          for (int v = 0; v < nv; ++v) r[v] -= (fr[v] - fl[v]) * inv_dx;
          // Advective form for q and S2: subtract q div_a(u) so that uniform q is transported exactly.
          const double du = (fr[nv] - fl[nv]) * inv_dx;
          for (int d = 0; d < n; ++d) r[l.q(d)] += wc[pl.q(d)] * du;
          r[l.s2()] += wc[pl.s2()] * du;
        }
      }
    });
  }
}

void Solver::viscous_rhs(Field& f, Eigen::ArrayXXd& rhs) {
  // Viscous fluxes are assembled together with the hyperbolic ones; isolate them by differencing
  // against an inviscid evaluation.
  Eigen::ArrayXXd inviscid;
  const double mu = p_.mu;
  hyperbolic_rhs(f, rhs);
  p_.mu = 0.0;
  hyperbolic_rhs(f, inviscid);
  p_.mu = mu;
  rhs -= inviscid;
}

void Solver::relaxation_substep(Field& f, double dt) { relax(f, dt, false); }

void Solver::relax(Field& f, double dt, bool primitives_current) {
  if (!primitives_current) {
    fill_ghosts(f);
    primitives(f);
  }
  const Grid& g = f.grid();
  const int n = g.dim;
  const FieldLayout l{n};
  const PrimLayout pl{n};
  const double eq = p_.tau1 > 0 ? std::exp(-dt / p_.tau1) : 0.0;
  const double es = p_.tau3 > 0 ? std::exp(-dt / p_.tau3) : 0.0;
  auto& u = f.data();
  for_each_interior(g, [&](long c, int, int, int) {
    double div = 0.0;
    for (int a = 0; a < n; ++a) {
      const long s = g.stride(a);
      const double h2 = 2.0 * g.dx(a);
      const double dtheta = (w_(pl.theta(), c + s) - w_(pl.theta(), c - s)) / h2;
      div += (w_(pl.u(a), c + s) - w_(pl.u(a), c - s)) / h2;
      u(l.q(a), c) = u(l.q(a), c) * eq - p_.kappa * dtheta * (1.0 - eq);
    }
    u(l.s2(), c) = u(l.s2(), c) * es + p_.lambda * div * (1.0 - es);
  });
  fill_ghosts(f);
}

void Solver::apply_classical_closure(Field& f) {
  const double t1 = p_.tau1, t3 = p_.tau3;
  p_.tau1 = p_.tau3 = 0.0;
  relaxation_substep(f, 1.0);
  p_.tau1 = t1;
  p_.tau3 = t3;
}

void Solver::transport(Field& f, double dt) {
  auto& u = f.data();
  stage0_ = u;
  hyperbolic_rhs(f, rhs_);
  u = stage0_ + dt * rhs_;
  if (cfg_.integrator == Integrator::ssp_rk2) {
    hyperbolic_rhs(f, rhs_);
    u = 0.5 * stage0_ + 0.5 * (u + dt * rhs_);
  } else {
    hyperbolic_rhs(f, rhs_);
    u = 0.75 * stage0_ + 0.25 * (u + dt * rhs_);
    hyperbolic_rhs(f, rhs_);
    u = (1.0 / 3.0) * stage0_ + (2.0 / 3.0) * (u + dt * rhs_);
  }
}

StepInfo Solver::step(Field& f, std::optional<double> dt_in) {
  StepInfo info = stable_dt(f);
  const double limit = info.dt;
  std::optional<double> req = dt_in ? dt_in : cfg_.fixed_dt;
  if (req) {
    if (!(*req > 0) || *req > limit * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "requested dt = " << *req << " exceeds the stability limit " << limit << " (cfl " << info.dt_cfl
         << ", relaxation " << info.dt_relax << ", viscous " << info.dt_visc << ")";
      throw std::runtime_error(os.str());
    }
    info.dt = *req;
  } else if (cfg_.end_time > f.t) {
    info.dt = std::min(limit, cfg_.end_time - f.t);
  }
  const double dt = info.dt;
  if (cfg_.classical) {
    transport(f, dt);
    apply_classical_closure(f);
  } else {
    relax(f, 0.5 * dt, true);  // stable_dt left the primitives of f in w_
    transport(f, dt);
    relaxation_substep(f, 0.5 * dt);
  }
  f.t += dt;
  ++f.step;
  return info;
}

Eigen::ArrayXXd hyperbolic_rhs(const Field& f, const ModelParams& p) {
  Field g = f;
  ModelParams q = p;
  q.mu = 0.0;
  Solver s(q, SolverConfig{});
  Eigen::ArrayXXd r;
  s.hyperbolic_rhs(g, r);
  return r;
}

Eigen::ArrayXXd viscous_rhs(const Field& f, const ModelParams& p) {
  Field g = f;
  Solver s(p, SolverConfig{});
  Eigen::ArrayXXd r;
  s.viscous_rhs(g, r);
  return r;
}

Field relaxation_substep(const Field& f, double dt, const ModelParams& p) {
  Field g = f;
  Solver s(p, SolverConfig{});
  s.relaxation_substep(g, dt);
  return g;
}

Field step(const Field& f, const SolverConfig& cfg, const ModelParams& p) {
  Field g = f;
  Solver s(p, cfg);
  s.step(g);
  return g;
}

Field classical_reference_step(const Field& f, const SolverConfig& cfg, const ModelParams& p) {
  SolverConfig c = cfg;
  c.classical = true;
  return step(f, c, p);
}

std::string to_string(Integrator i) { return i == Integrator::ssp_rk2 ? "ssp-rk2" : "ssp-rk3"; }

Integrator integrator_from_string(const std::string& s) {
  if (s == "ssp-rk2") return Integrator::ssp_rk2;
  if (s == "ssp-rk3") return Integrator::ssp_rk3;
  throw ConfigError({"solver.integrator: expected \"ssp-rk2\" or \"ssp-rk3\", got \"" + s + "\""});
}

}  // namespace hyperns

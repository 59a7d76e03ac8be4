#include "hyperns/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperns/eigenstructure.hpp"

namespace hyperns {

namespace {

constexpr double kPi = std::numbers::pi;

// Blends left(r) into right(r) over [a, b].
template <typename Left, typename Right>
double blend(double r, double a, double b, Left&& left, Right&& right) {
  const double s = septic_smoothstep((r - a) / (b - a));
  return (1.0 - s) * left(r) + s * right(r);
}

double radius_of(const SpaceVector<double>& x) { return x.norm(); }

Grid check_grid(const Grid& grid) {
  grid.validate();
  return grid;
}

}  // namespace

double septic_smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double x4 = x * x * x * x;
  return x4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

double blowup_profile(double r, double L, double M, double w) {
  r = std::abs(r);
  auto rise = [L](double s) { return L * std::sin(0.5 * kPi * s); };
  auto plateau = [L](double) { return L; };
  auto decay = [L, M](double s) { return 0.5 * L * std::cos(kPi * (s - M + 1.0)) + 0.5 * L; };
  auto zero = [](double) { return 0.0; };
  if (r >= M) return 0.0;
  if (r >= M - 2.0 * w) return blend(r, M - 2.0 * w, M, decay, zero);
  if (r >= M - 1.0 + w) return decay(r);
  if (r > M - 1.0 - w) return blend(r, M - 1.0 - w, M - 1.0 + w, plateau, decay);
  if (r >= 1.0 + w) return L;
  if (r > 1.0 - w) return blend(r, 1.0 - w, 1.0 + w, rise, plateau);
  return rise(r);
}

double ball_indicator(double r, double M, double w) {
  return 1.0 - septic_smoothstep((std::abs(r) - (M - 2.0 * w)) / (2.0 * w));
}

double background_sigma(const ModelParams& p) {
  const auto s = PrimitiveState<double>::equilibrium(p.dim);
  return 1.1 * pointwise_max_speed(s, Direction::axis(p.dim, 0), p, CouplingForm::physical);
}

double blowup_amplitude(const ModelParams& p, const BlowupProfileSpec& spec, double sigma, double margin) {
  const int n = p.dim, k = n + 2;
  const double M = spec.M_support;
  const double omega = BlowupLedger::unit_ball_volume(n);
  const double rho_max = std::max(1.0, spec.rho0), rho_min = std::min(1.0, spec.rho0);
  const double a_n = (2.0 - n * (p.gamma() - 1.0)) / 2.0;
  if (!(a_n > 0)) throw DomainError("blow-up amplitude needs 2 - n (gamma - 1) > 0");
  const double c3 = a_n / (omega * rho_max * std::pow(M, k));
  const double c2 = sigma / M;
  const double need = std::max(4.0 * (k - 1) * c2 / c3, std::sqrt(2.0 * n * omega * std::pow(M, n) / c3));
  // F(0) >= L * per_unit, keeping only the plateau shrunk to [2, M - 2].
  const double per_unit = rho_min * n * omega * (std::pow(M - 2.0, n + 1) - std::pow(2.0, n + 1)) / (n + 1);
  return margin * need / per_unit;
}

BlowupData blowup_initial_data(const BlowupProfileSpec& spec, const Grid& grid, const ModelParams& p) {
  check_grid(grid);
  std::vector<std::string> issues;
  if (spec.M_support < 5.0) issues.push_back("scenario.M_support: must be >= 5");
  if (!(spec.rho0 > 0) || !(spec.theta0 > 0) || !(spec.rho0 * spec.theta0 > 1.0))
    issues.push_back("scenario.rho0, scenario.theta0: need positive values with rho0 * theta0 > 1");
  if (p.dim != grid.dim) issues.push_back("model.dim: differs from grid.dim");
  for (int a = 0; a < grid.dim; ++a)
    if (grid.lower[a] > -spec.M_support || grid.upper[a] < spec.M_support)
      issues.push_back("grid: axis " + std::to_string(a) + " does not contain the support ball of radius " +
                       std::to_string(spec.M_support));
  double dx_min = grid.dx(0);
  for (int a = 1; a < grid.dim; ++a) dx_min = std::min(dx_min, grid.dx(a));
  const double w = spec.mollifier_width.value_or(2.0 * dx_min);
  if (!(w > 0) || 4.0 * w > 1.0) issues.push_back("scenario.mollifier_width: must lie in (0, 1/4]");
  if (!issues.empty()) throw ConfigError(issues);

  BlowupData out;
  out.width = w;
  out.sigma = spec.sigma.value_or(background_sigma(p));
  out.L = spec.L.value_or(blowup_amplitude(p, spec, out.sigma));
  out.field = Field(grid, p);
  const double M = spec.M_support;
  for_each_interior(grid, [&](long c, int i, int j, int k) {
    const SpaceVector<double> x = cell_position(grid, i, j, k);
    const double r = radius_of(x);
    auto s = PrimitiveState<double>::equilibrium(grid.dim);
    const double chi = ball_indicator(r, M, w);
    s.rho = 1.0 + (spec.rho0 - 1.0) * chi;
    s.theta = 1.0 + (spec.theta0 - 1.0) * chi;
    if (r > 0) s.u = blowup_profile(r, out.L, M, w) / r * x;
    out.field.set_primitive(c, s, p);
  });
  fill_ghosts(out.field);
  out.ledger = blowup_ledger(out.field, p, out.sigma, M);
  return out;
}

Field small_data(const Grid& grid, const ModelParams& p, double amplitude, std::optional<double> radius) {
  check_grid(grid);
  double side = grid.upper[0] - grid.lower[0];
  for (int a = 1; a < grid.dim; ++a) side = std::min(side, grid.upper[a] - grid.lower[a]);
  const double R = radius.value_or(0.25 * side);
  if (!(R > 0)) throw DomainError("small_data radius must be positive");
  SpaceVector<double> centre(grid.dim);
  for (int a = 0; a < grid.dim; ++a) centre(a) = 0.5 * (grid.lower[a] + grid.upper[a]);
  Field f(grid, p);
  for_each_interior(grid, [&](long c, int i, int j, int k) {
    const SpaceVector<double> x = cell_position(grid, i, j, k) - centre;
    const double y = x.squaredNorm() / (R * R);
    auto s = PrimitiveState<double>::equilibrium(grid.dim);
    if (y < 1.0) {
      const double b = amplitude * std::pow(1.0 - y, 4);
      s.rho += b;
      s.theta += b;
      s.u = b / R * x;
    }
    f.set_primitive(c, s, p);
  });
  fill_ghosts(f);
  return f;
}

Field periodic_wave_data(const Grid& grid, const ModelParams& p, double amplitude) {
  check_grid(grid);
  Field f(grid, p);
  for_each_interior(grid, [&](long c, int i, int j, int k) {
    const double phase = cell_position(grid, i, j, k).sum();
    auto s = PrimitiveState<double>::equilibrium(grid.dim);
    s.rho = 1.0 + amplitude * std::sin(phase);
    s.theta = 1.0 + amplitude * std::cos(phase);
    for (int a = 0; a < grid.dim; ++a) s.u(a) = amplitude * std::sin(phase + 1.0 + 0.5 * a);
    f.set_primitive(c, s, p);
  });
  fill_ghosts(f);
  return f;
}

void closure_fluxes(const Field& f_in, const ModelParams& p, Eigen::ArrayXXd& q, Eigen::ArrayXd& s2) {
  Field f = f_in;
  fill_ghosts(f);
  const Grid& g = f.grid();
  const int n = g.dim;
  const long cells = static_cast<long>(g.interior_count());
  q.setZero(n, cells);
  s2.setZero(cells);
  long idx = 0;
  for_each_interior(g, [&](long c, int, int, int) {
    double div = 0.0;
    for (int a = 0; a < n; ++a) {
      const long st = g.stride(a);
      const auto sp = f.primitive(c + st, p), sm = f.primitive(c - st, p);
      const double h2 = 2.0 * g.dx(a);
      q(a, idx) = -p.kappa * (sp.theta - sm.theta) / h2;
      div += (sp.u(a) - sm.u(a)) / h2;
    }
    s2(idx) = p.lambda * div;
    ++idx;
  });
}

namespace {

// Fixed smooth layer (phi, psi) with unit discrete H^3 norm.
std::vector<Eigen::ArrayXd> layer_mode(const Grid& g) {
  const long cells = static_cast<long>(g.interior_count());
  std::vector<Eigen::ArrayXd> comps(g.dim + 1, Eigen::ArrayXd(cells));
  long idx = 0;
  for_each_interior(g, [&](long, int i, int j, int k) {
    const double phase = cell_position(g, i, j, k).sum();
    for (int a = 0; a < g.dim; ++a) comps[a](idx) = std::sin(phase + 0.3 + 0.7 * a);
    comps[g.dim](idx) = std::cos(phase - 0.4);
    ++idx;
  });
  const double norm = std::sqrt(sobolev_norm2(comps, g, 3));
  for (auto& c : comps) c /= norm;
  return comps;
}

}  // namespace

Field well_prepared_data(const Grid& grid, const ModelParams& p, double tau, const Field& base,
                         double layer_amplitude) {
  if (!(tau >= 0)) throw DomainError("tau must be non-negative");
  Eigen::ArrayXXd q;
  Eigen::ArrayXd s2;
  closure_fluxes(base, p, q, s2);
  std::vector<Eigen::ArrayXd> layer;
  const double scale = std::sqrt(tau) * layer_amplitude;
  if (scale != 0.0) layer = layer_mode(grid);
  Field f(grid, p);
  long idx = 0;
  for_each_interior(grid, [&](long c, int, int, int) {
    auto s = base.primitive(c, p);
    s.q = q.col(idx).matrix();
    s.s2 = s2(idx);
    if (scale != 0.0) {
      for (int a = 0; a < grid.dim; ++a) s.q(a) += scale * layer[a](idx);
      s.s2 += scale * layer[grid.dim](idx);
    }
    f.set_primitive(c, s, p);
    ++idx;
  });
  fill_ghosts(f);
  f.t = base.t;
  return f;
}

double flux_correction_norm(const Field& f, const ModelParams& p) {
  Eigen::ArrayXXd q;
  Eigen::ArrayXd s2;
  closure_fluxes(f, p, q, s2);
  auto w = primitive_components(f, p);
  const int n = f.grid().dim;
  std::vector<Eigen::ArrayXd> diff;
  for (int a = 0; a < n; ++a) diff.push_back(w[n + 2 + a] - q.row(a).transpose());
  diff.push_back(w[2 * n + 2] - s2);
  return std::sqrt(sobolev_norm2(diff, f.grid(), 3));
}

double state_difference_norm(const Field& a, const Field& b, const ModelParams& p) {
  const auto wa = primitive_components(a, p);
  const auto wb = primitive_components(b, p);
  const int n = a.grid().dim;
  std::vector<Eigen::ArrayXd> diff;
  for (int r = 0; r <= n + 1; ++r) diff.push_back(wa[r] - wb[r]);
  return std::sqrt(sobolev_norm2(diff, a.grid(), 3));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return std::nan("");
  const Eigen::Map<Eigen::VectorXd> X(lx.data(), lx.size()), Y(ly.data(), ly.size());
  const double mx = X.mean(), my = Y.mean();
  return ((X.array() - mx) * (Y.array() - my)).sum() / (X.array() - mx).square().sum();
}

SweepResult relaxation_sweep(const SweepConfig& cfg) {
  check_grid(cfg.grid);
  SweepResult res;
  const ModelParams pc = cfg.model.classical();
  const Field base = periodic_wave_data(cfg.grid, pc, cfg.amplitude);

  struct Run {
    ModelParams p;
    Solver solver;
    Field field;
    SweepRow row;
  };
  std::vector<Run> runs;
  runs.reserve(cfg.taus.size());
  SolverConfig sc;
  sc.integrator = cfg.integrator;
  sc.enforce_box = true;
  for (double tau : cfg.taus) {
    ModelParams p = cfg.model;
    p.tau1 = p.tau3 = tau;
    validate(p);
    runs.push_back({p, Solver(p, sc), well_prepared_data(cfg.grid, p, tau, base, cfg.layer_amplitude), {}});
    runs.back().row.tau = tau;
  }
  SolverConfig scc = sc;
  scc.classical = true;
  Solver reference(pc, scc);
  Field ref = well_prepared_data(cfg.grid, pc, 0.0, base);

  double speed = 0.0;
  for_each_interior(cfg.grid, [&](long c, int, int, int) {
    speed = std::max(speed, rusanov_speed(base.primitive(c, pc), Direction::axis(cfg.grid.dim, 0), pc));
  });
  res.end_time = cfg.end_time.value_or(0.25 * (cfg.grid.upper[0] - cfg.grid.lower[0]) / speed);

  double dt = cfg.dt.value_or(0.0);
  if (!cfg.dt) {
    dt = reference.stable_dt(ref).dt;
    for (auto& r : runs) dt = std::min(dt, r.solver.stable_dt(r.field).dt);
    dt *= 0.9;
  }
  res.steps = std::max(1L, static_cast<long>(std::ceil(res.end_time / dt)));
  res.dt = res.end_time / res.steps;

  auto sample = [&](bool final) {
    for (auto& r : runs) {
      if (r.row.status != "ok") continue;
      const double es = state_difference_norm(r.field, ref, r.p);
      const double ef = flux_correction_norm(r.field, r.p);
      r.row.err_state = std::max(r.row.err_state, es);
      r.row.err_flux = std::max(r.row.err_flux, ef);
      if (final) {
        r.row.err_state_final = es;
        r.row.err_flux_final = ef;
      }
    }
  };
  sample(false);
  for (long s = 1; s <= res.steps; ++s) {
    reference.step(ref, res.dt);
    for (auto& r : runs) {
      if (r.row.status != "ok") continue;
      try {
        r.solver.step(r.field, res.dt);
      } catch (const std::exception& e) {
        r.row.status = std::string("failed: ") + e.what();
      }
    }
    if (s % std::max(1, cfg.sample_every) == 0 || s == res.steps) sample(s == res.steps);
  }

  std::vector<double> tau, es, ef, esf, eff;
  for (auto& r : runs) {
    res.rows.push_back(r.row);
    if (r.row.status != "ok") continue;
    tau.push_back(r.row.tau);
    es.push_back(r.row.err_state);
    ef.push_back(r.row.err_flux);
    esf.push_back(r.row.err_state_final);
    eff.push_back(r.row.err_flux_final);
  }
  res.slope_state = loglog_slope(tau, es);
  res.slope_flux = loglog_slope(tau, ef);
  res.slope_state_final = loglog_slope(tau, esf);
  res.slope_flux_final = loglog_slope(tau, eff);
  return res;
}

}  // namespace hyperns

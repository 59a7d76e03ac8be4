#include "hyperns/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hyperns/diagnostics.hpp"
#include "hyperns/entropy.hpp"
#include "hyperns/io.hpp"

namespace hyperns {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void apply_options(RunConfig& cfg, const RunOptions& opt) {
  if (opt.out) cfg.output.dir = *opt.out;
  if (opt.until) cfg.solver.end_time = *opt.until;
  if (opt.threads) cfg.solver.threads = *opt.threads;
}

double l1_momentum(const Field& f) {
  const FieldLayout l = f.layout();
  double s = 0.0;
  for_each_interior(f.grid(), [&](long c, int, int, int) {
    for (int d = 0; d < f.grid().dim; ++d) s += std::abs(f.data()(l.mom(d), c));
  });
  return s * f.grid().cell_volume();
}

double relative(double now, double then, double scale) {
  const double denom = std::max(std::abs(then), scale);
  return denom > 0 ? std::abs(now - then) / denom : std::abs(now - then);
}

bool support_at_boundary(const Field& f, double radius) {
  const Grid& g = f.grid();
  for (int a = 0; a < g.dim; ++a) {
    const double reach = std::min(-g.lower[a], g.upper[a]);
    if (radius > reach - 3.0 * g.dx(a)) return true;
  }
  return false;
}

}  // namespace

Field initial_field(const RunConfig& cfg, BlowupData* blowup) {
  const ScenarioConfig& s = cfg.scenario;
  switch (s.kind) {
    case ScenarioKind::small_data:
      return small_data(cfg.grid, cfg.model, s.amplitude, s.radius);
    case ScenarioKind::periodic_wave: {
      const Field base = periodic_wave_data(cfg.grid, cfg.model, s.amplitude);
      return well_prepared_data(cfg.grid, cfg.model, std::max(cfg.model.tau1, cfg.model.tau3), base);
    }
    case ScenarioKind::blowup: {
      BlowupData d = blowup_initial_data(s.blowup, cfg.grid, cfg.model);
      Field f = d.field;
      if (blowup) *blowup = std::move(d);
      return f;
    }
    default:
      return Field(cfg.grid, cfg.model);
  }
}

int run(RunConfig cfg, const RunOptions& opt, std::ostream& log) {
  apply_options(cfg, opt);
  const fs::path out(cfg.output.dir);
  fs::create_directories(out);
  const ModelParams& p = cfg.model;
  const int n = cfg.grid.dim;
  const bool blowup_run = cfg.scenario.kind == ScenarioKind::blowup;
  for (const auto& w : cfg.warnings) log << "warning: " << w << '\n';

  BlowupData blowup;
  Field f = initial_field(cfg, blowup_run ? &blowup : nullptr);
  json saved = json::object();
  if (opt.resume) {
    StoredField s = load_field(*opt.resume);
    if (s.field.grid().cells != cfg.grid.cells || s.field.grid().dim != cfg.grid.dim)
      throw ConfigError({"--resume: checkpoint grid does not match grid"});
    f = std::move(s.field);
    saved = s.extra;
    log << "resumed from " << *opt.resume << " at t = " << f.t << ", step " << f.step << '\n';
  }
  write_json(out / "config.json", to_json(cfg));

  Solver solver(p, cfg.solver);
  const ModelParams& pe = solver.params();  // classical runs evaluate diagnostics with tau = 0
  const CouplingForm speed_form = cfg.solver.classical ? CouplingForm::transport : CouplingForm::physical;

  // Quantities fixed at t0 (restored on resume).
  Totals t0_totals = conserved_totals(f);
  double G0 = functional_G(f, pe), mom_scale = l1_momentum(f);
  double grad0 = max_velocity_gradient(f, pe);
  double t_start = f.t;
  if (saved.contains("initial")) {
    const json& in = saved["initial"];
    t0_totals.mass = in.at("mass");
    t0_totals.energy = in.at("energy");
    const auto m = in.at("momentum").get<std::vector<double>>();
    for (int d = 0; d < n; ++d) t0_totals.momentum(d) = m[d];
    G0 = in.at("G");
    mom_scale = in.at("momentum_l1");
    grad0 = in.at("max_grad_u");
    t_start = in.at("t");
  }

  std::optional<EntropyAudit> audit;
  std::string audit_note;
  if (cfg.diagnostics.audit) {
    try {
      audit.emplace(pe);
      audit->start(f);
      if (saved.contains("audit")) {
        const json& a = saved["audit"];
        AuditRow first{a.at("t0"), a.at("eta1_0"), 0.0, 0.0};
        AuditRow last{a.at("t"), a.at("eta1"), a.at("production_cum"), a.at("residual")};
        audit->restore({first, last}, a.at("production_cum"));
      }
    } catch (const DomainError& e) {
      audit.reset();
      audit_note = std::string("entropy audit disabled: ") + e.what();
      log << "warning: " << audit_note << '\n';
    }
  }
  std::optional<BlowupMonitor> monitor;
  if (blowup_run) {
    monitor.emplace(blowup.ledger, pe);
    if (saved.contains("monitor")) {
      const json& m = saved["monitor"];
      monitor->restore(m.at("q_integral"), m.at("s_integral"), m.at("t0"));
    }
  }
  std::optional<SobolevEnergy> sobolev;
  if (cfg.diagnostics.sobolev) {
    sobolev.emplace(pe);
    sobolev->start(f);
    if (saved.contains("sobolev")) sobolev->restore(saved["sobolev"].at("sup"), saved["sobolev"].at("integral"));
  }

  const std::string csv_path = (out / "diagnostics.csv").string();
  // rows up to the checkpoint stay; the one at its time already carries the step-based columns
  if (opt.resume) truncate_csv_after(csv_path, f.t);
  CsvWriter csv(csv_path, diagnostics_columns(n), opt.resume.has_value());

  bool bound_ok = true;
  double max_growth = 0.0;
  auto record = [&](const Field& now, const Field* before) {
    DiagnosticsRow r;
    const Totals tot = conserved_totals(now);
    r.t = now.t;
    r.mass = tot.mass;
    r.momentum = tot.momentum;
    r.etot = tot.energy;
    r.G = functional_G(now, pe);
    r.F = functional_F(now);
    r.bound = kNaN;
    if (monitor) {
      const MonitorRow m = monitor->record(now);
      r.bound = m.bound;
      bound_ok = bound_ok && m.satisfied;
    }
    r.eta1_total = r.production_cum = r.residual = kNaN;
    if (audit && !audit->rows().empty()) {
      const AuditRow& a = audit->rows().back();
      r.eta1_total = a.eta1_total;
      r.production_cum = a.production_cum;
      r.residual = a.residual;
    }
    r.support_radius = cfg.diagnostics.support ? support_radius(now, pe, cfg.diagnostics.support_tol) : kNaN;
    try {
      r.sigma_max = max_wave_speed(now, pe, speed_form);
    } catch (const std::exception&) {
      r.sigma_max = kNaN;
    }
    r.max_grad_u = max_velocity_gradient(now, pe);
    r.E_sobolev = sobolev ? sobolev->value() : kNaN;
    r.theta_residual = cfg.diagnostics.theta_residual && before ? theta_equation_residual(*before, now, pe) : kNaN;
    csv.row(diagnostics_values(r));
  };

  auto checkpoint_state = [&](const Field& now) {
    json x;
    std::vector<double> m0(t0_totals.momentum.data(), t0_totals.momentum.data() + n);
    x["initial"] = {{"mass", t0_totals.mass}, {"energy", t0_totals.energy}, {"momentum", m0},
                    {"G", G0},                {"momentum_l1", mom_scale},   {"max_grad_u", grad0},
                    {"t", t_start}};
    if (audit && !audit->rows().empty()) {
      const AuditRow& a0 = audit->rows().front();
      const AuditRow& a = audit->rows().back();
      x["audit"] = {{"t0", a0.t},          {"eta1_0", a0.eta1_total}, {"t", a.t},
                    {"eta1", a.eta1_total}, {"production_cum", a.production_cum}, {"residual", a.residual}};
    }
    if (monitor)
      x["monitor"] = {{"q_integral", monitor->q_integral()},
                      {"s_integral", monitor->s_integral()},
                      {"t0", monitor->t0().value_or(now.t)}};
    if (sobolev) x["sobolev"] = {{"sup", sobolev->sup_part()}, {"integral", sobolev->integral_part()}};
    return x;
  };

  if (!opt.resume) record(f, nullptr);
  else if (monitor) monitor->record(f);

  std::string status = "completed", halt_reason, message;
  const auto wall0 = std::chrono::steady_clock::now();
  const double end_time = cfg.solver.end_time;
  Field before;
  auto finished = [&] {
    if (cfg.solver.max_steps >= 0 && f.step >= cfg.solver.max_steps) return true;
    return !(f.t < end_time * (1.0 - 1e-14));
  };
  while (!finished()) {
    before = f;
    StepInfo info;
    try {
      info = solver.step(f);
    } catch (const std::exception& e) {
      status = "aborted";
      message = e.what();
      f = before;
      break;
    }
    if (audit) audit->advance(before, info.dt, f);
    if (monitor) monitor->accumulate(before, info.dt);
    if (sobolev) sobolev->advance(before, info.dt, f);

    bool halt = false;
    if (blowup_run) {
      const double growth = grad0 > 0 ? max_velocity_gradient(f, pe) / grad0 : 0.0;
      max_growth = std::max(max_growth, growth);
      if (growth >= cfg.scenario.growth_halt) {
        halt = true;
        halt_reason = "velocity gradient grew by " + format_number(growth);
      } else if (f.step % 16 == 0 && support_at_boundary(f, support_radius(f, pe, cfg.diagnostics.support_tol))) {
        halt = true;
        halt_reason = "support reached the domain boundary";
      }
    }
    const bool last = halt || finished();
    if (f.step % cfg.diagnostics.every == 0 || last) record(f, &before);
    if (cfg.output.snapshot_every > 0 && f.step % cfg.output.snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%08ld", f.step);
      save_field((out / (std::string(name) + ".bin")).string(), f, pe, json::object());
      if (cfg.output.snapshot_csv) write_snapshot_csv((out / (std::string(name) + ".csv")).string(), f, pe);
    }
    if (cfg.output.checkpoint_every > 0 && f.step % cfg.output.checkpoint_every == 0)
      save_field((out / "checkpoint.bin").string(), f, p, checkpoint_state(f));
    if (halt) {
      status = "halted";
      break;
    }
  }
  csv.flush();
  save_field((out / "checkpoint.bin").string(), f, p, checkpoint_state(f));

  const Totals tot = conserved_totals(f);
  json drift;
  drift["mass"] = relative(tot.mass, t0_totals.mass, 0.0);
  drift["energy"] = relative(tot.energy, t0_totals.energy, 0.0);
  json md = json::array();
  for (int d = 0; d < n; ++d) md.push_back(relative(tot.momentum(d), t0_totals.momentum(d), mom_scale));
  drift["momentum"] = md;
  const double G = functional_G(f, pe);

  json summary;
  summary["status"] = status;
  if (!halt_reason.empty()) summary["halt_reason"] = halt_reason;
  if (!message.empty()) summary["message"] = message;
  summary["steps"] = f.step;
  summary["t_final"] = f.t;
  summary["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  summary["drift"] = drift;
  summary["G"] = {{"initial", G0}, {"final", G}, {"relative_drift", relative(G, G0, 0.0)}};
  if (audit) {
    double worst_increase = 0.0;
    const auto& rows = audit->rows();
    for (std::size_t i = 1; i < rows.size(); ++i)
      worst_increase = std::max(worst_increase, rows[i].eta1_total - rows[i - 1].eta1_total);
    summary["audit"] = {{"eta1_initial", audit->initial_integral()},
                        {"eta1_final", rows.back().eta1_total},
                        {"production_cum", audit->production_cum()},
                        {"max_relative_residual", audit->max_relative_residual()},
                        {"max_step_increase", worst_increase}};
  } else if (!audit_note.empty()) {
    summary["audit"] = {{"note", audit_note}};
  }
  if (blowup_run) {
    summary["ledger"] = ledger_to_json(blowup.ledger);
    summary["blowup"] = {{"L", blowup.L},
                         {"sigma", blowup.sigma},
                         {"mollifier_width", blowup.width},
                         {"initial_max_grad_u", grad0},
                         {"max_growth", max_growth},
                         {"bound_satisfied", bound_ok}};
  }
  if (sobolev) summary["sobolev"] = {{"value", sobolev->value()}};
  summary["warnings"] = cfg.warnings;
  json verdicts;
  const bool periodic = std::all_of(cfg.grid.boundary.begin(), cfg.grid.boundary.begin() + n,
                                    [](Boundary b) { return b == Boundary::periodic; });
  double worst = std::max(drift["mass"].get<double>(), drift["energy"].get<double>());
  for (const auto& v : md) worst = std::max(worst, v.get<double>());
  if (periodic && p.mu == 0.0) verdicts["conservation_1e-11"] = worst < 1e-11;
  verdicts["completed"] = status != "aborted";
  summary["verdicts"] = verdicts;
  write_json(out / "summary.json", summary);
  log << status << ": t = " << f.t << ", steps = " << f.step;
  if (!halt_reason.empty()) log << " (" << halt_reason << ")";
  if (!message.empty()) log << "\n  " << message;
  log << '\n';
  return status == "aborted" ? kExitAborted : kExitOk;
}

int run_sweep(RunConfig cfg, const RunOptions& opt, std::ostream& log) {
  apply_options(cfg, opt);
  const fs::path out(cfg.output.dir);
  fs::create_directories(out);
  const SweepResult r = relaxation_sweep(sweep_config(cfg));
  write_sweep_csv((out / "sweep.csv").string(), r);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& row : r.rows) {
    rows.push_back({{"tau", row.tau},
                    {"err_state", row.err_state},
                    {"err_flux", row.err_flux},
                    {"err_state_final", row.err_state_final},
                    {"err_flux_final", row.err_flux_final},
                    {"status", row.status}});
    all_ok = all_ok && row.status == "ok";
  }
  write_json(out / "sweep_summary.json", {{"rows", rows},
                                          {"slope_state", r.slope_state},
                                          {"slope_flux", r.slope_flux},
                                          {"slope_state_final", r.slope_state_final},
                                          {"slope_flux_final", r.slope_flux_final},
                                          {"end_time", r.end_time},
                                          {"dt", r.dt},
                                          {"steps", r.steps}});
  log << "sweep: slope_state = " << r.slope_state << ", slope_flux = " << r.slope_flux << " (T = " << r.end_time
      << ", " << r.steps << " steps)\n";
  return all_ok ? kExitOk : kExitAborted;
}

int run_hypercheck(RunConfig cfg, const RunOptions& opt, int samples, int lambdas, std::ostream& log) {
  apply_options(cfg, opt);
  const fs::path out(cfg.output.dir);
  fs::create_directories(out);
  std::ofstream lines(out / "hypercheck.jsonl");
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    const HypercheckSummary h = hypercheck(cfg.model, n, samples, cfg.seed + n, lambdas);
    ok = ok && h.hyperbolic == h.samples;
    lines << json{{"kind", "eigen"},
                  {"dim", n},
                  {"samples", h.samples},
                                     {"hyperbolic", h.hyperbolic},
                                     {"complete_bases", h.complete_bases},
                                     {"max_eigenvalue_mismatch", h.max_eigenvalue_mismatch},
                                     {"max_imag_part", h.max_imag_part},
                                     {"max_factorization_defect", h.max_factorization_defect},
                                     {"min_root_gap", h.min_root_gap},
                                     {"seconds", h.seconds},
                  {"failures", h.failures}}
                 .dump()
          << '\n';
    log << "n = " << n << ": " << h.hyperbolic << "/" << h.samples << " hyperbolic, eigenvalue mismatch "
        << h.max_eigenvalue_mismatch << '\n';
  }
  ModelParams pk = cfg.model;
  pk.dim = cfg.grid.dim;
  if (pk.mu > 0 && pk.dim >= 2) {
    const CompensatorReport k = kawashima_check(pk, std::nullopt, std::nullopt, 32, cfg.seed);
    lines << json{{"kind", "compensator"},
                  {"dim", pk.dim},
                  {"n_param", k.n_param},
                  {"epsilon", k.epsilon},
                  {"antisymmetry_defect", k.antisymmetry_defect},
                  {"m_min_eigenvalue", k.m_min_eigenvalue},
                  {"halvings", k.halvings},
                  {"success", k.success}}
                 .dump()
          << '\n';
    ok = ok && k.success;
    log << "compensator: " << (k.success ? "positive" : "not found") << ", min eig " << k.m_min_eigenvalue << '\n';
  } else {
    // in one dimension the shear symbol vanishes and the velocity block of M is -eps pbar_rho
    lines << json{{"kind", "compensator"}, {"note", "requires mu > 0 and dim >= 2"}}.dump() << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_audit(const std::string& dir, std::ostream& log) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("snap_", 0) == 0 && e.path().extension() == ".bin") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2) throw ConfigError({"audit: need at least two snap_*.bin files in " + dir});
  std::vector<Field> snaps;
  ModelParams p;
  for (const auto& path : files) {
    StoredField s = load_field(path.string());
    p = s.params;
    snaps.push_back(std::move(s.field));
  }
  const auto rows = discrete_entropy_audit(snaps, p);
  CsvWriter w((fs::path(dir) / "audit.csv").string(), {"t", "eta1_total", "production_cum", "residual"});
  double worst = 0.0;
  for (const auto& r : rows) {
    w.row(std::vector<double>{r.t, r.eta1_total, r.production_cum, r.residual});
    worst = std::max(worst, std::abs(r.residual));
  }
  const double scale = std::abs(rows.front().eta1_total);
  log << "audit: " << rows.size() << " snapshots, max |residual| = " << worst;
  if (scale > 0) log << " (" << worst / scale << " relative)";
  log << '\n';
  return kExitOk;
}

int run_ledger(RunConfig cfg, const RunOptions& opt, std::ostream& log) {
  apply_options(cfg, opt);
  const fs::path out(cfg.output.dir);
  fs::create_directories(out);
  if (cfg.scenario.kind != ScenarioKind::blowup) throw ConfigError({"scenario.kind: ledger needs \"blowup\""});
  const BlowupData d = blowup_initial_data(cfg.scenario.blowup, cfg.grid, cfg.model);
  json j = ledger_to_json(d.ledger);
  j["L"] = d.L;
  j["mollifier_width"] = d.width;
  j["warnings"] = cfg.warnings;
  write_json(out / "ledger.json", j);
  log << "ledger: F0 > threshold " << d.ledger.f0_above_threshold << ", F0^2 >= threshold " << d.ledger.f0_sq_above_threshold << ", G0 > 0 "
      << d.ledger.g0_positive << ", applicable " << d.ledger.applicable << '\n';
  return kExitOk;
}

}  // namespace hyperns

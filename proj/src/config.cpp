#include "hyperns/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hyperns {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were consumed so leftovers can be reported.
class Reader {
 public:
  Reader(const json* j, std::string path, std::vector<std::string>& issues)
      : j_(j), path_(std::move(path)), issues_(issues) {
    if (j_ && !j_->is_object()) {
      fail("", "expected an object");
      j_ = nullptr;
    }
  }

  bool has(const char* key) const { return j_ && j_->contains(key); }

  Reader child(const char* key) {
    seen_.insert(key);
    const json* c = has(key) ? &(*j_)[key] : nullptr;
    return Reader(c, join(key), issues_);
  }

  void number(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (v->is_number()) out = v->get<double>();
      else fail(key, "expected a number");
    }
  }
  void number(const char* key, std::optional<double>& out) {
    if (const json* v = take(key)) {
      if (v->is_null()) out.reset();
      else if (v->is_number()) out = v->get<double>();
      else fail(key, "expected a number or null");
    }
  }
  template <typename Int>
  void integer(const char* key, Int& out) {
    if (const json* v = take(key)) {
      if (v->is_number_integer()) out = v->get<Int>();
      else fail(key, "expected an integer");
    }
  }
  void boolean(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else fail(key, "expected true or false");
    }
  }
  void string(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (v->is_string()) out = v->get<std::string>();
      else fail(key, "expected a string");
    }
  }
  /// Array of numbers; returns false when absent.
  bool numbers(const char* key, std::vector<double>& out) {
    const json* v = take(key);
    if (!v) return false;
    if (!v->is_array()) {
      fail(key, "expected an array of numbers");
      return false;
    }
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) {
        fail(key, "expected an array of numbers");
        return false;
      }
      out.push_back(e.get<double>());
    }
    return true;
  }
  bool strings(const char* key, std::vector<std::string>& out) {
    const json* v = take(key);
    if (!v) return false;
    if (!v->is_array()) {
      fail(key, "expected an array of strings");
      return false;
    }
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_string()) {
        fail(key, "expected an array of strings");
        return false;
      }
      out.push_back(e.get<std::string>());
    }
    return true;
  }

  void require(bool ok, const char* key, const std::string& msg) {
    if (!ok) fail(key, msg);
  }
  void fail(const char* key, const std::string& msg) { issues_.push_back(join(key) + ": " + msg); }

  /// Reports keys that were never consumed.
  void finish() {
    if (!j_) return;
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!seen_.count(it.key())) issues_.push_back(join(it.key().c_str()) + ": unknown key");
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    return has(key) ? &(*j_)[key] : nullptr;
  }
  std::string join(const char* key) const {
    if (!*key) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* j_;
  std::string path_;
  std::vector<std::string>& issues_;
  std::set<std::string> seen_;
};

Boundary boundary_from_string(const std::string& s, bool& ok) {
  ok = true;
  if (s == "periodic") return Boundary::periodic;
  if (s == "constant_state") return Boundary::constant_state;
  ok = false;
  return Boundary::periodic;
}

void read_model(Reader r, ModelParams& m, std::optional<int>& dim) {
  r.number("tau1", m.tau1);
  r.number("tau3", m.tau3);
  r.number("kappa", m.kappa);
  r.number("lambda", m.lambda);
  r.number("mu", m.mu);
  r.number("cv", m.cv);
  r.number("r_gas", m.r_gas);
  if (r.has("dim")) {
    int d = 0;
    r.integer("dim", d);
    dim = d;
  }
  Reader b = r.child("admissible_box");
  b.number("rho_min", m.box.rho_min);
  b.number("rho_max", m.box.rho_max);
  b.number("theta_min", m.box.theta_min);
  b.number("theta_max", m.box.theta_max);
  b.number("u_max", m.box.u_max);
  b.number("delta", m.box.delta);
  b.finish();
  r.finish();
}

void read_grid(Reader r, Grid& g, std::vector<std::string>& issues) {
  r.integer("dim", g.dim);
  if (g.dim < 1 || g.dim > 3) {
    r.fail("dim", "must be 1, 2 or 3");
    g.dim = 1;
  }
  const int n = g.dim;
  std::vector<double> v;
  auto fill = [&](const char* key, auto& target, auto convert) {
    if (!r.numbers(key, v)) return;
    if (static_cast<int>(v.size()) != n) {
      r.fail(key, "expected " + std::to_string(n) + " entries");
      return;
    }
    for (int a = 0; a < n; ++a) target[a] = convert(v[a]);
  };
  fill("cells", g.cells, [](double x) { return static_cast<int>(x); });
  fill("lower", g.lower, [](double x) { return x; });
  fill("upper", g.upper, [](double x) { return x; });
  std::vector<std::string> b;
  if (r.strings("boundary", b)) {
    if (b.size() == 1) b.assign(n, b[0]);
    if (static_cast<int>(b.size()) != n) {
      r.fail("boundary", "expected 1 or " + std::to_string(n) + " entries");
    } else {
      for (int a = 0; a < n; ++a) {
        bool ok = true;
        g.boundary[a] = boundary_from_string(b[a], ok);
        if (!ok) r.fail("boundary", "expected \"periodic\" or \"constant_state\", got \"" + b[a] + "\"");
      }
    }
  }
  r.finish();
  try {
    g.validate();
  } catch (const ConfigError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
}

void read_solver(Reader r, SolverConfig& s) {
  r.number("cfl", s.cfl);
  std::string integ = to_string(s.integrator);
  r.string("integrator", integ);
  try {
    s.integrator = integrator_from_string(integ);
  } catch (const ConfigError&) {
    r.fail("integrator", "expected \"ssp-rk2\" or \"ssp-rk3\"");
  }
  r.number("end_time", s.end_time);
  r.integer("max_steps", s.max_steps);
  r.number("fixed_dt", s.fixed_dt);
  r.boolean("classical", s.classical);
  r.boolean("enforce_box", s.enforce_box);
  r.integer("threads", s.threads);
  r.require(s.cfl > 0 && s.cfl <= 0.9, "cfl", "must satisfy 0 < cfl <= 0.9");
  r.require(s.end_time >= 0, "end_time", "must be non-negative");
  r.require(!s.fixed_dt || *s.fixed_dt > 0, "fixed_dt", "must be positive");
  r.require(s.threads >= 1, "threads", "must be at least 1");
  r.finish();
}

void read_scenario(Reader r, ScenarioConfig& sc) {
  std::string kind = to_string(sc.kind);
  r.string("kind", kind);
  if (kind == "equilibrium") sc.kind = ScenarioKind::equilibrium;
  else if (kind == "small_data") sc.kind = ScenarioKind::small_data;
  else if (kind == "periodic_wave") sc.kind = ScenarioKind::periodic_wave;
  else if (kind == "blowup") sc.kind = ScenarioKind::blowup;
  else r.fail("kind", "expected equilibrium, small_data, periodic_wave or blowup, got \"" + kind + "\"");
  r.number("amplitude", sc.amplitude);
  r.number("radius", sc.radius);
  BlowupProfileSpec& b = sc.blowup;
  r.number("M_support", b.M_support);
  r.number("L", b.L);
  r.number("mollifier_width", b.mollifier_width);
  r.number("rho0", b.rho0);
  r.number("theta0", b.theta0);
  r.number("sigma", b.sigma);
  r.number("growth_halt", sc.growth_halt);
  r.require(!sc.radius || *sc.radius > 0, "radius", "must be positive");
  r.require(sc.growth_halt > 1, "growth_halt", "must exceed 1");
  r.require(!b.L || *b.L > 0, "L", "must be positive");
  r.require(!b.sigma || *b.sigma > 0, "sigma", "must be positive");
  r.finish();
}

void read_diagnostics(Reader r, DiagnosticsConfig& d) {
  r.integer("every", d.every);
  r.boolean("audit", d.audit);
  r.boolean("sobolev", d.sobolev);
  r.boolean("theta_residual", d.theta_residual);
  r.boolean("support", d.support);
  r.number("support_tol", d.support_tol);
  r.require(d.every >= 1, "every", "must be at least 1");
  r.require(d.support_tol >= 0, "support_tol", "must be non-negative");
  r.finish();
}

void read_output(Reader r, OutputConfig& o) {
  r.string("dir", o.dir);
  r.integer("snapshot_every", o.snapshot_every);
  r.boolean("snapshot_csv", o.snapshot_csv);
  r.integer("checkpoint_every", o.checkpoint_every);
  r.require(!o.dir.empty(), "dir", "must not be empty");
  r.require(o.snapshot_every >= 0, "snapshot_every", "must be non-negative");
  r.require(o.checkpoint_every >= 0, "checkpoint_every", "must be non-negative");
  r.finish();
}

void read_sweep(Reader r, SweepSection& s) {
  r.number("amplitude", s.amplitude);
  r.number("layer_amplitude", s.layer_amplitude);
  std::vector<double> taus;
  if (r.numbers("taus", taus)) s.taus = taus;
  r.number("end_time", s.end_time);
  r.number("dt", s.dt);
  r.integer("sample_every", s.sample_every);
  bool positive = !s.taus.empty();
  for (double t : s.taus) positive = positive && t > 0;
  r.require(positive, "taus", "must be a non-empty list of positive values");
  r.require(s.layer_amplitude >= 0 && s.layer_amplitude <= 1, "layer_amplitude", "must lie in [0, 1]");
  r.require(s.sample_every >= 1, "sample_every", "must be at least 1");
  r.finish();
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::small_data:
      return "small_data";
    case ScenarioKind::periodic_wave:
      return "periodic_wave";
    case ScenarioKind::blowup:
      return "blowup";
    default:
      return "equilibrium";
  }
}

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "constant_state"; }

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("<root>: invalid JSON: ") + e.what()});
  }
  std::vector<std::string> issues;
  RunConfig cfg;
  Reader root(&j, "", issues);
  std::optional<int> model_dim;
  read_model(root.child("model"), cfg.model, model_dim);
  read_grid(root.child("grid"), cfg.grid, issues);
  if (model_dim && *model_dim != cfg.grid.dim) issues.push_back("model.dim: must equal grid.dim");
  cfg.model.dim = cfg.grid.dim;
  read_solver(root.child("solver"), cfg.solver);
  read_scenario(root.child("scenario"), cfg.scenario);
  read_diagnostics(root.child("diagnostics"), cfg.diagnostics);
  read_output(root.child("output"), cfg.output);
  read_sweep(root.child("sweep"), cfg.sweep);
  root.integer("seed", cfg.seed);
  root.finish();
  const auto model_issues = validation_issues(cfg.model);
  issues.insert(issues.end(), model_issues.begin(), model_issues.end());
  if (!issues.empty()) throw ConfigError(issues);

  if (cfg.scenario.kind == ScenarioKind::blowup && !(cfg.model.gamma() < 5.0 / 3.0))
    cfg.warnings.push_back("scenario.kind: blow-up requires gamma < 5/3 but gamma = " +
                           std::to_string(cfg.model.gamma()) + "; the blow-up ledger is inapplicable");
  if (cfg.scenario.kind == ScenarioKind::blowup && cfg.model.mu != 0.0)
    cfg.warnings.push_back("model.mu: the blow-up argument assumes mu = 0");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"--config: cannot open " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const RunConfig& c) {
  json j;
  const ModelParams& m = c.model;
  j["model"] = {{"tau1", m.tau1},   {"tau3", m.tau3}, {"kappa", m.kappa},  {"lambda", m.lambda},
                {"mu", m.mu},       {"cv", m.cv},     {"r_gas", m.r_gas}, {"dim", m.dim},
                {"admissible_box",
                 {{"rho_min", m.box.rho_min},
                  {"rho_max", m.box.rho_max},
                  {"theta_min", m.box.theta_min},
                  {"theta_max", m.box.theta_max},
                  {"u_max", m.box.u_max},
                  {"delta", m.box.delta}}}};
  const Grid& g = c.grid;
  json cells = json::array(), lower = json::array(), upper = json::array(), bnd = json::array();
  for (int a = 0; a < g.dim; ++a) {
    cells.push_back(g.cells[a]);
    lower.push_back(g.lower[a]);
    upper.push_back(g.upper[a]);
    bnd.push_back(to_string(g.boundary[a]));
  }
  j["grid"] = {{"dim", g.dim}, {"cells", cells}, {"lower", lower}, {"upper", upper}, {"boundary", bnd}};
  const SolverConfig& s = c.solver;
  j["solver"] = {{"cfl", s.cfl},
                 {"integrator", to_string(s.integrator)},
                 {"end_time", s.end_time},
                 {"max_steps", s.max_steps},
                 {"fixed_dt", s.fixed_dt ? json(*s.fixed_dt) : json(nullptr)},
                 {"classical", s.classical},
                 {"enforce_box", s.enforce_box},
                 {"threads", s.threads}};
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const ScenarioConfig& sc = c.scenario;
  j["scenario"] = {{"kind", to_string(sc.kind)},
                   {"amplitude", sc.amplitude},
                   {"radius", opt(sc.radius)},
                   {"M_support", sc.blowup.M_support},
                   {"L", opt(sc.blowup.L)},
                   {"mollifier_width", opt(sc.blowup.mollifier_width)},
                   {"rho0", sc.blowup.rho0},
                   {"theta0", sc.blowup.theta0},
                   {"sigma", opt(sc.blowup.sigma)},
                   {"growth_halt", sc.growth_halt}};
  const DiagnosticsConfig& d = c.diagnostics;
  j["diagnostics"] = {{"every", d.every},
                      {"audit", d.audit},
                      {"sobolev", d.sobolev},
                      {"theta_residual", d.theta_residual},
                      {"support", d.support},
                      {"support_tol", d.support_tol}};
  j["output"] = {{"dir", c.output.dir},
                 {"snapshot_every", c.output.snapshot_every},
                 {"snapshot_csv", c.output.snapshot_csv},
                 {"checkpoint_every", c.output.checkpoint_every}};
  j["sweep"] = {{"amplitude", c.sweep.amplitude},     {"layer_amplitude", c.sweep.layer_amplitude},
                {"taus", c.sweep.taus},               {"end_time", opt(c.sweep.end_time)},
                {"dt", opt(c.sweep.dt)},              {"sample_every", c.sweep.sample_every}};
  j["seed"] = c.seed;
  return j;
}

void apply_env_overrides(RunConfig& cfg, const std::function<const char*(const char*)>& getenv_fn) {
  auto get = [&](const char* name) -> const char* {
    return getenv_fn ? getenv_fn(name) : std::getenv(name);
  };
  std::vector<std::string> issues;
  auto number = [&](const char* name, auto apply) {
    const char* v = get(name);
    if (!v || !*v) return;
    char* end = nullptr;
    const double x = std::strtod(v, &end);
    if (end == v || *end != '\0') {
      issues.push_back(std::string(name) + ": not a number: " + v);
      return;
    }
    apply(x);
  };
  number("HNS_THREADS", [&](double x) { cfg.solver.threads = static_cast<int>(x); });
  number("HNS_UNTIL", [&](double x) { cfg.solver.end_time = x; });
  number("HNS_MAX_STEPS", [&](double x) { cfg.solver.max_steps = static_cast<long>(x); });
  number("HNS_SEED", [&](double x) { cfg.seed = static_cast<std::uint64_t>(x); });
  number("HNS_CELLS", [&](double x) {
    for (int a = 0; a < cfg.grid.dim; ++a) cfg.grid.cells[a] = static_cast<int>(x);
  });
  if (const char* out = get("HNS_OUT"); out && *out) cfg.output.dir = out;
  if (cfg.solver.threads < 1) issues.push_back("HNS_THREADS: must be at least 1");
  if (!issues.empty()) throw ConfigError(issues);
  cfg.grid.validate();
}

SweepConfig sweep_config(const RunConfig& cfg) {
  SweepConfig s;
  s.model = cfg.model;
  s.grid = cfg.grid;
  s.amplitude = cfg.sweep.amplitude;
  s.layer_amplitude = cfg.sweep.layer_amplitude;
  s.taus = cfg.sweep.taus;
  s.end_time = cfg.sweep.end_time;
  s.dt = cfg.sweep.dt;
  s.integrator = cfg.solver.integrator;
  s.sample_every = cfg.sweep.sample_every;
  return s;
}

}  // namespace hyperns

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hyperns/errors.hpp"
#include "hyperns/io.hpp"
#include "hyperns/run.hpp"

using namespace hyperns;

namespace {

struct Common {
  std::string config;
  RunOptions opt;
};

void add_common(CLI::App* app, Common& c, bool config_required = true) {
  auto* o = app->add_option("--config", c.config, "run configuration (JSON)");
  if (config_required) o->required();
  o->check(CLI::ExistingFile);
  app->add_option("--out", c.opt.out, "output directory (overrides output.dir)");
  app->add_option("--threads", c.opt.threads, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--until", c.opt.until, "end time (overrides solver.end_time)");
}

RunConfig configured(const Common& c) {
  RunConfig cfg = load_config(c.config);
  apply_env_overrides(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperns: hyperbolized compressible Navier-Stokes lab"};
  app.require_subcommand(1);

  Common sim, sweep, hyper, ledger;
  auto* c_sim = app.add_subcommand("simulate", "time-step a configured scenario");
  add_common(c_sim, sim);
  c_sim->add_option("--resume", sim.opt.resume, "checkpoint to continue from")->check(CLI::ExistingFile);

  auto* c_sweep = app.add_subcommand("sweep", "relaxation-limit sweep against the classical reference");
  add_common(c_sweep, sweep);

  auto* c_hyper = app.add_subcommand("hypercheck", "sampled hyperbolicity and compensator checks");
  add_common(c_hyper, hyper, false);
  std::string model_path;
  int samples = 1000, lambdas = 0;
  std::optional<std::uint64_t> seed;
  c_hyper->add_option("--model", model_path, "bare model parameter JSON (instead of --config)")
      ->check(CLI::ExistingFile);
  c_hyper->add_option("--samples", samples, "states per dimension")->check(CLI::PositiveNumber);
  c_hyper->add_option("--lambdas", lambdas, "random factorization points per state");
  c_hyper->add_option("--seed", seed, "sampling seed");

  auto* c_audit = app.add_subcommand("audit", "entropy audit over stored snapshots");
  std::string snap_dir;
  c_audit->add_option("dir", snap_dir, "directory with snap_*.bin")->required()->check(CLI::ExistingDirectory);

  auto* c_ledger = app.add_subcommand("ledger", "blow-up ledger of the configured initial data");
  add_common(c_ledger, ledger);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_sim->parsed()) return run(configured(sim), sim.opt, std::cout);
    if (c_sweep->parsed()) return run_sweep(configured(sweep), sweep.opt, std::cout);
    if (c_ledger->parsed()) return run_ledger(configured(ledger), ledger.opt, std::cout);
    if (c_audit->parsed()) return run_audit(snap_dir, std::cout);
    if (c_hyper->parsed()) {
      RunConfig cfg;
      if (!hyper.config.empty()) {
        cfg = configured(hyper);
      } else if (!model_path.empty()) {
        std::ifstream in(model_path);
        cfg.model = model_from_json(nlohmann::json::parse(in));
        validate(cfg.model);
        cfg.output.dir = ".";
        apply_env_overrides(cfg);
      } else {
        std::cerr << "hypercheck: one of --config or --model is required\n";
        return kExitConfig;
      }
      if (seed) cfg.seed = *seed;
      return run_hypercheck(cfg, hyper.opt, samples, lambdas, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAborted;
  }
  return kExitOk;
}

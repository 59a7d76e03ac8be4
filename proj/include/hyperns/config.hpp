#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperns/scenarios.hpp"
#include "hyperns/solver.hpp"

namespace hyperns {

enum class ScenarioKind { equilibrium, small_data, periodic_wave, blowup };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::equilibrium;
  double amplitude = 0.01;             ///< small_data and periodic_wave
  std::optional<double> radius;        ///< small_data bump radius
  BlowupProfileSpec blowup;
  double growth_halt = 1e3;            ///< blowup: stop once max |grad u| reaches this multiple of its initial value
};

struct DiagnosticsConfig {
  int every = 10;                      ///< steps between CSV rows (the final state is always recorded)
  bool audit = true;
  bool sobolev = false;                ///< H^3 energy surrogate (costly)
  bool theta_residual = false;
  bool support = true;
  double support_tol = 1e-12;
};

struct OutputConfig {
  std::string dir = "out";
  int snapshot_every = 0;              ///< 0 disables field snapshots
  bool snapshot_csv = false;           ///< CSV copy of each snapshot (small grids)
  int checkpoint_every = 0;            ///< 0: final checkpoint only
};

struct SweepSection {
  double amplitude = 0.05;
  double layer_amplitude = 1.0;
  std::vector<double> taus{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  std::optional<double> end_time;
  std::optional<double> dt;
  int sample_every = 10;
};

struct RunConfig {
  ModelParams model;
  Grid grid;
  SolverConfig solver;
  ScenarioConfig scenario;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  SweepSection sweep;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;   ///< non-fatal findings, e.g. the blow-up ledger being inapplicable
};

/// Parses and validates a JSON run configuration. Unknown keys and every invalid value are
/// collected into one ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Normalised JSON echo of a configuration (all defaults filled).
nlohmann::json to_json(const RunConfig& cfg);

/// Applies HNS_THREADS, HNS_OUT, HNS_UNTIL, HNS_MAX_STEPS, HNS_SEED, HNS_CELLS overrides
/// read through `getenv` (std::getenv by default).
void apply_env_overrides(RunConfig& cfg,
                         const std::function<const char*(const char*)>& getenv = nullptr);

SweepConfig sweep_config(const RunConfig& cfg);

std::string to_string(ScenarioKind k);
std::string to_string(Boundary b);

}  // namespace hyperns

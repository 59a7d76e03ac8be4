#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hyperns/config.hpp"

namespace hyperns {

struct RunOptions {
  std::optional<std::string> out;     ///< overrides output.dir
  std::optional<double> until;        ///< overrides solver.end_time
  std::optional<std::string> resume;  ///< checkpoint to continue from
  std::optional<int> threads;
};

/// Exit codes of the drivers.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitAborted = 2, kExitCheckFailed = 3 };

/// Initial field of the configured scenario (blow-up data also fills `ledger` when given).
Field initial_field(const RunConfig& cfg, BlowupData* blowup = nullptr);

/// Time-steps the configured scenario, writing diagnostics.csv, snapshots, checkpoint.bin and
/// summary.json under the output directory. On abort the last good state is saved to
/// checkpoint.bin and kExitAborted is returned.
int run(RunConfig cfg, const RunOptions& opt, std::ostream& log);

/// relaxation_sweep on the configured model and grid; writes sweep.csv and sweep_summary.json.
int run_sweep(RunConfig cfg, const RunOptions& opt, std::ostream& log);

/// Hyperbolicity, factorization and compensator checks; writes hypercheck.jsonl (one JSON object per line).
int run_hypercheck(RunConfig cfg, const RunOptions& opt, int samples, int lambdas, std::ostream& log);

/// Entropy audit over the snap_*.bin files of a directory; writes audit.csv there.
int run_audit(const std::string& snapshot_dir, std::ostream& log);

/// Blow-up ledger of the configured initial data; writes ledger.json.
int run_ledger(RunConfig cfg, const RunOptions& opt, std::ostream& log);

}  // namespace hyperns

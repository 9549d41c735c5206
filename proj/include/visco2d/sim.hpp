#pragma once

#include <functional>
#include <optional>

#include "visco2d/config.hpp"
#include "visco2d/diagnostics.hpp"

namespace visco2d {

/// Exit-code contract shared by the CLI and the presets.
enum ExitCode : int {
  kExitPass = 0,
  kExitCriterionFailure = 1,
  kExitConfigError = 2,
  kExitInstability = 3,
};

template <typename State>
struct Trajectory {
  std::vector<DiagnosticsRecord> series;
  State final_state;
  bool stable = true;
  std::string message;
};

template <typename State>
using Observer = std::function<void(const State&, double t, int step)>;

struct RunOptions {
  double mu = 1.0;
  SchemeSpec scheme;
  double t_final = 1.0;
  int record_every = 1;
};

/// Integrates one formulation to t_final, recording diagnostics every
/// `record_every` steps (always at t=0 and the final time). The observer,
/// when set, fires at every record point. Deterministic given its inputs.
/// On a non-finite state the trajectory stops and carries the last healthy
/// records with stable=false.
Trajectory<RotStrainState> run_rotstrain(RotStrainState s, const RunOptions& opts,
                                         const Observer<RotStrainState>& obs = {});
Trajectory<StrainState> run_strain(StrainState s, const RunOptions& opts,
                                   const Observer<StrainState>& obs = {});
Trajectory<OldroydState> run_oldroyd(OldroydState s, const RunOptions& opts,
                                     const Observer<OldroydState>& obs = {});

/// CLI-facing driver: builds initial data, runs the configured formulation
/// (or both), writes series CSVs and optional snapshots into out_dir.
/// Returns kExitPass or kExitInstability.
int run_simulation(const RunConfig& cfg);

}  // namespace visco2d

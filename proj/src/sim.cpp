#include "visco2d/sim.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "visco2d/io.hpp"

namespace visco2d {

namespace {

template <typename State>
Trajectory<State> run_generic(State s, const RunOptions& opts, const Observer<State>& obs) {
  Trajectory<State> traj;
  Accumulators acc;
  double t = 0.0;
  traj.series.push_back(record(s, t, opts.mu, acc));
  if (obs) obs(s, t, 0);

  const double dt = opts.scheme.dt;
  const long n_steps = std::lround(opts.t_final / dt);
  long k = 0;
  while (true) {
    bool done = false;
    double h = dt;
    if (opts.scheme.adaptive) {
      h = std::min(dt, cfl_dt(s, opts.scheme.cfl_safety, dt));
      if (t + h >= opts.t_final - 1e-14) {
        h = std::min(h, opts.t_final - t);  // land exactly, never above CFL
        done = true;
      }
      if (h <= 0.0) break;
    } else {
      if (k >= n_steps) break;
      done = (k + 1 == n_steps);
    }
    bool recorded = false;
    try {
      s = step(s, opts.mu, opts.scheme, h);
      ++k;
      t += h;
      if (k % opts.record_every == 0 || done) {
        traj.series.push_back(record(s, t, opts.mu, acc));
        recorded = true;
      }
    } catch (const std::exception& e) {
      // Guard trips inside the step or the diagnostics both mean the
      // discretization left the admissible regime; keep the last healthy
      // records and report.
      traj.stable = false;
      traj.message = std::string("instability at t=") + std::to_string(t) + ": " + e.what();
      break;
    }
    if (recorded && obs) obs(s, t, static_cast<int>(k));
    if (done) break;
  }
  traj.final_state = std::move(s);
  return traj;
}

}  // namespace

Trajectory<RotStrainState> run_rotstrain(RotStrainState s, const RunOptions& opts,
                                         const Observer<RotStrainState>& obs) {
  return run_generic(std::move(s), opts, obs);
}

Trajectory<StrainState> run_strain(StrainState s, const RunOptions& opts,
                                   const Observer<StrainState>& obs) {
  return run_generic(std::move(s), opts, obs);
}

Trajectory<OldroydState> run_oldroyd(OldroydState s, const RunOptions& opts,
                                     const Observer<OldroydState>& obs) {
  return run_generic(std::move(s), opts, obs);
}

namespace {

template <typename State>
int drive(const RunConfig& cfg, State s0, const std::string& tag) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  RunOptions opts;
  opts.mu = cfg.mu;
  opts.scheme = cfg.scheme;
  opts.t_final = cfg.t_final;
  opts.record_every = cfg.record_every;

  Observer<State> obs;
  if (cfg.snapshot_every > 0) {
    obs = [&](const State& s, double t, int step_idx) {
      if (step_idx % cfg.snapshot_every != 0) return;
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%s_%06d.bin", tag.c_str(), step_idx);
      write_snapshot((dir / name).string(), s, t);
    };
  }

  const auto traj = run_generic(std::move(s0), opts, obs);
  write_series_csv((dir / ("series_" + tag + ".csv")).string(), traj.series);
  if (!traj.stable) {
    std::cerr << "visco2d: " << traj.message << "\n";
    return kExitInstability;
  }
  return kExitPass;
}

}  // namespace

int run_simulation(const RunConfig& cfg) {
  const GridPtr grid = make_grid(cfg.n, cfg.length);
  const MatchedStates init = build_initial_states(grid, cfg.init, cfg.scheme.dt);

  switch (cfg.formulation) {
    case Formulation::oldroyd:
      return drive(cfg, init.oldroyd, "oldroyd");
    case Formulation::strain:
      return drive(cfg, init.strain, "strain");
    case Formulation::rotstrain:
      return drive(cfg, init.rotstrain, "rotstrain");
    case Formulation::both: {
      const int rc1 = drive(cfg, init.rotstrain, "rotstrain");
      const int rc2 = drive(cfg, init.oldroyd, "oldroyd");
      return rc1 != kExitPass ? rc1 : rc2;
    }
  }
  return kExitConfigError;
}

}  // namespace visco2d

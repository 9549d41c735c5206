#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "visco2d/presets.hpp"
#include "visco2d/sim.hpp"

int main(int argc, char** argv) {
  CLI::App app{"visco2d: pseudo-spectral 2D periodic viscoelastic flow simulator"};

  std::string config_path;
  std::string preset;
  std::string out_dir;
  long seed = -1;
  int n_override = 0;
  double dt_override = 0.0;
  double t_final_override = -1.0;

  app.add_option("--config", config_path, "run configuration file (key = value lines)");
  app.add_option("--preset", preset,
                 "verification preset: equivalence|energy_law|identities|refinement|theorem");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--seed", seed, "initial-data seed override");
  app.add_option("--n", n_override, "grid points per axis override");
  app.add_option("--dt", dt_override, "time step override");
  app.add_option("--t-final", t_final_override, "final time override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? visco2d::kExitPass : visco2d::kExitConfigError;
  }

  try {
    if (!preset.empty()) {
      if (!visco2d::known_preset(preset)) {
        std::cerr << "usage error: unknown preset '" << preset << "'\n";
        return visco2d::kExitConfigError;
      }
      return visco2d::execute_preset(preset, out_dir.empty() ? "." : out_dir);
    }

    visco2d::RunConfig cfg;
    if (!config_path.empty()) cfg = visco2d::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.init.seed = static_cast<std::uint64_t>(seed);
    if (n_override != 0) {
      if (n_override < 8 || n_override % 2 != 0) {
        std::cerr << "config error: --n must be even and >= 8\n";
        return visco2d::kExitConfigError;
      }
      cfg.n = n_override;
    }
    if (dt_override != 0.0) {
      if (dt_override < 0.0) {
        std::cerr << "config error: --dt must be positive\n";
        return visco2d::kExitConfigError;
      }
      cfg.scheme.dt = dt_override;
    }
    if (t_final_override >= 0.0) cfg.t_final = t_final_override;
    if (!cfg.preset.empty()) {
      if (!visco2d::known_preset(cfg.preset)) {
        std::cerr << "usage error: unknown preset '" << cfg.preset << "'\n";
        return visco2d::kExitConfigError;
      }
      return visco2d::execute_preset(cfg.preset, cfg.out_dir);
    }
    return visco2d::run_simulation(cfg);
  } catch (const visco2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return visco2d::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return visco2d::kExitInstability;
  }
}

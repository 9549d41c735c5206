#pragma once

#include <string>

#include "visco2d/init.hpp"
#include "visco2d/integrator.hpp"

namespace visco2d {

enum class Formulation { oldroyd, strain, rotstrain, both };

/// Complete experiment description. Parsed from a line-oriented
/// "key = value" file ('#' starts a comment); unknown keys are errors.
struct RunConfig {
  int n = 64;
  double length = 6.283185307179586476925286766559;  // 2*pi
  double mu = 1.0;
  SchemeSpec scheme;  // kind=if_rk4, dt=1e-3, cfl_safety=0.9, adaptive=false
  double t_final = 1.0;
  int record_every = 1;  // steps between diagnostics records
  Formulation formulation = Formulation::rotstrain;
  InitRecipe init;
  std::string out_dir = ".";
  int snapshot_every = 0;  // steps between snapshots; 0 disables
  std::string preset;      // optional preset name

  bool operator==(const RunConfig& o) const;
};

/// Thrown with a message carrying the offending line number.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

std::string to_string(Formulation f);
std::string to_string(SchemeKind k);
std::string to_string(InitKind k);

}  // namespace visco2d

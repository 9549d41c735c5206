#pragma once

#include <string>
#include <vector>

#include "visco2d/config.hpp"

namespace visco2d {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Verification experiments at desk scale (n=64, mu=1, amplitude 0.05
/// warm-start data, dt=1e-3 unless a refinement ladder says otherwise).
/// Each returns one result per checked bound.
std::vector<CriterionResult> check_exact_identities(std::uint64_t seed = 7);
std::vector<CriterionResult> check_formulation_equivalence();
std::vector<CriterionResult> check_energy_law();
std::vector<CriterionResult> check_constraint_propagation();
std::vector<CriterionResult> check_pressure_consistency();
std::vector<CriterionResult> check_weak_dissipation();
std::vector<CriterionResult> check_u_balance();
std::vector<CriterionResult> check_integrator_order();

/// Preset names: equivalence | energy_law | identities | refinement | theorem.
/// Runs the mapped experiments, writes report_<name>.txt (and artifacts)
/// into out_dir, prints one line per checked bound.
/// Exit code 0 iff every bound holds, 1 otherwise.
int execute_preset(const std::string& name, const std::string& out_dir);

bool known_preset(const std::string& name);

}  // namespace visco2d

#pragma once

#include <cstdint>
#include <string>

#include "visco2d/models.hpp"

namespace visco2d {

enum class InitKind { trivial, taylor_green, warm_start };

/// Recipe for admissible initial data. `warm_stream` names the stream
/// function of the frozen solenoidal generator b = grad^perp(psi) used to
/// transport F away from the identity: "basic" is psi = warm_amp sin(x1)
/// sin(x2); "rich" adds higher harmonics for more spectral content.
struct InitRecipe {
  InitKind kind = InitKind::warm_start;
  double amplitude = 0.05;   // Taylor-Green velocity amplitude
  double warm_time = 0.5;    // transport horizon s0
  std::string warm_stream = "basic";
  double warm_amp = 0.1;
  std::uint64_t seed = 1;
};

/// u0 = amplitude (sin x1 cos x2, -cos x1 sin x2); solenoidal by construction.
VectorField taylor_green_velocity(const GridPtr& grid, double amplitude);

/// Stream function of the warm-start generator, and b = grad^perp(psi).
ScalarField warm_stream_function(const GridPtr& grid, const InitRecipe& recipe);
VectorField perp_gradient(const ScalarField& psi);

/// F0 from transporting the identity by the frozen field b over [0, s0]:
/// F_s + b.grad F = grad(b) F. In the continuum this preserves det F = 1 and
/// div F^T = 0 exactly; the discrete residuals are pure discretization error.
/// `dt` is the transport step (callers tie it to the run step for refinement
/// studies). Throws on unstable transport with a CFL diagnostic.
Tensor2Field warm_start_deformation(const GridPtr& grid, const InitRecipe& recipe, double dt);

struct MatchedStates {
  OldroydState oldroyd;
  StrainState strain;
  RotStrainState rotstrain;
  ConstraintResiduals residuals;  // of the rotation-strain state
};

/// Pointwise polar decomposition of F0 with deterministic breadth-first
/// unwrapping of theta from the grid origin. Throws std::runtime_error on a
/// topological obstruction (inconsistent 2pi jumps, nonzero winding).
MatchedStates states_from_deformation(const VectorField& u0, const Tensor2Field& F0);

/// Continuous representative of a wrapped angle field (exposed for tests).
ScalarField unwrap_angle(const ScalarField& wrapped);

/// Builds matched initial states for a recipe (grid-level entry point).
MatchedStates build_initial_states(const GridPtr& grid, const InitRecipe& recipe, double dt);

}  // namespace visco2d

#pragma once

#include <functional>
#include <vector>

#include "visco2d/models.hpp"

namespace visco2d {

enum class SchemeKind { if_rk4, rk4_explicit };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::if_rk4;
  double dt = 1e-3;
  double cfl_safety = 0.9;
  bool adaptive = false;
  /// Optional biharmonic stabilizer exp(-hyperviscosity |k|^4 dt) on the
  /// velocity only (the strain must keep its bare transport dynamics).
  /// Off by default; runs that enable it are excluded from verification.
  double hyperviscosity = 0.0;
};

/// Flat view of a formulation state for the generic RK core. The first
/// `n_velocity` components are the velocity: they carry the viscous factor
/// and are re-projected after every stage.
struct FieldPack {
  GridPtr grid;
  std::vector<ScalarField> comps;
  int n_velocity = 0;
};

using PackRhs = std::function<FieldPack(const FieldPack&)>;

/// One step of classical RK4 with the velocity diffusion integrated exactly
/// by the Fourier-space factor exp(-(mu |k|^2 + nu4 |k|^4) h) (Lawson
/// integrating factor). `rhs` must return the nonlinear part only. With
/// mu = nu4 = 0 or n_velocity = 0 this reduces to plain RK4.
void if_rk4_step(FieldPack& y, const PackRhs& rhs, double mu, double h, double nu4 = 0.0);

/// Fully explicit RK4; `rhs` must include the viscous term.
void rk4_explicit_step(FieldPack& y, const PackRhs& rhs, double h);

/// Typed single steps (h defaults to scheme.dt; adaptive callers pass the
/// CFL-clamped step). Throws std::runtime_error naming the offending field
/// when a non-finite value appears.
OldroydState step(const OldroydState& s, double mu, const SchemeSpec& scheme, double h);
StrainState step(const StrainState& s, double mu, const SchemeSpec& scheme, double h);
RotStrainState step(const RotStrainState& s, double mu, const SchemeSpec& scheme, double h);

/// CFL-limited step: cfl_safety * dx / max(|u|_inf, max operator norm of
/// I+V or F), clamped to dt_cap. Transport speeds of the elastic factor are
/// included through the stretch operator norm.
double cfl_dt(const VectorField& u, double max_stretch_norm, double cfl_safety, double dt_cap);
double cfl_dt(const StrainState& s, double cfl_safety, double dt_cap);
double cfl_dt(const RotStrainState& s, double cfl_safety, double dt_cap);
double cfl_dt(const OldroydState& s, double cfl_safety, double dt_cap);

}  // namespace visco2d

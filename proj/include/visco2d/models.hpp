#pragma once

#include <string>

#include "visco2d/field.hpp"
#include "visco2d/tensor2.hpp"

namespace visco2d {

/// Oldroyd formulation: velocity + deformation tensor.
///   u_t + u.grad u + grad p = mu lap u + div(F F^T),  F_t + u.grad F = grad(u) F
struct OldroydState {
  VectorField u;
  Tensor2Field F;
};

/// Closed strain subsystem: velocity + symmetric strain.
struct StrainState {
  VectorField u;
  SymTensorField V;
};

/// Rotation-strain formulation: strain subsystem plus the rotation angle
/// (theta kept unwrapped, not reduced mod 2pi).
struct RotStrainState {
  VectorField u;
  SymTensorField V;
  ScalarField theta;
};

/// Residual norms of the intrinsic constraints and structural identities.
/// Entries that need a field the formulation does not carry are NaN.
struct ConstraintResiduals {
  double detIpV = 0.0;  // max |det(I+V) - 1|
  double trdet = 0.0;   // max |tr V + det V|
  double compat = 0.0;  // L2 of div V - A (I+V) grad theta
  double newid = 0.0;   // L2 of div div V + div[A V (I+V)^-1 A div V]
  double detF = 0.0;    // max |det F - 1|
  double divFT = 0.0;   // L2 of div F^T

  double max_core() const;  // max of the first four (NaN-ignoring)
};

struct OldroydRhs {
  VectorField du;
  Tensor2Field dF;
};

struct StrainRhs {
  VectorField du;
  SymTensorField dV;
};

struct RotStrainRhs {
  VectorField du;
  SymTensorField dV;
  ScalarField dtheta;
};

/// Semi-discrete right-hand sides. All nonlinear products are formed on the
/// collocation grid and 2/3-dealiased; du is Leray-projected. When
/// `include_viscous` is false the mu*lap(u) term is omitted (the integrating
/// factor scheme applies it exactly in Fourier space instead).
OldroydRhs rhs_oldroyd(const OldroydState& s, double mu, bool include_viscous = true);
StrainRhs rhs_strain(const StrainState& s, double mu, bool include_viscous = true);
ScalarField rhs_theta(const RotStrainState& s);
/// Single-pass evaluation of all three rotation-strain equations (shares
/// the velocity-gradient and gamma work between dV and dtheta).
RotStrainRhs rhs_rotstrain(const RotStrainState& s, double mu, bool include_viscous = true);

enum class PressureMode { projection, structural };

/// Mean-zero pressure. `projection` solves lap p = div(RHS before
/// projection); `structural` uses the form with the commutator term
/// -2 div[A V (I+V)^-1 A div V] substituted for 2 div div V. The two agree
/// exactly when the structural identity holds.
ScalarField recover_pressure(const StrainState& s, PressureMode mode, double mu = 1.0);

enum class TransportCoefficient {
  derived,  // 2/mu on the V-transport commutator (symbolic re-derivation)
  unit,     // 1, the plausible mis-derivation; kept so tests can reject it
};

/// Forcing f of the lap(U) evolution, U = u + 2 mu^-1 lap^-1 div V:
///   f = -[lap(u.grad u) - u.grad lap u] - (2/mu)[div(u.grad V) - u.grad div V]
///       + lap div(V V^T) + (1/mu) div[(grad u V + V grad u^T)
///       + (w12(u) - gamma)(V A - A V)]
VectorField assemble_f(const StrainState& s, double mu,
                       TransportCoefficient coeff = TransportCoefficient::derived);

ConstraintResiduals constraint_residuals(const RotStrainState& s);
ConstraintResiduals constraint_residuals(const OldroydState& s);
ConstraintResiduals constraint_residuals(const StrainState& s);

/// L2 norm of lap V - grad div V - (grad^perp)^2 tr V + grad^perp(A div V);
/// an exact pointwise identity for any symmetric V, so the result is at
/// rounding level for band-limited fields.
double hodge_residual(const SymTensorField& V);

/// Max-norm of the spectral divergence (used for solenoidality checks).
double divergence_l2(const VectorField& u);

/// Pointwise velocity gradient via spectral derivatives, as physical fields.
Tensor2Field velocity_gradient(const VectorField& u);

/// div V as a physical vector field (row divergence, spectral derivatives).
VectorField sym_divergence(const SymTensorField& V);

/// Composes F = (I+V) R(theta) pointwise.
Tensor2Field compose_deformation(const SymTensorField& V, const ScalarField& theta);

}  // namespace visco2d

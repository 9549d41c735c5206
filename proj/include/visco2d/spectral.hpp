#pragma once

#include "visco2d/field.hpp"

namespace visco2d {

SpectralScalar to_spectral(const ScalarField& f);
ScalarField to_physical(const SpectralScalar& s);

/// d/dx_axis of the real trigonometric interpolant, axis in {1, 2}.
/// The output has zero mean and zero Nyquist content.
SpectralScalar derivative_hat(const SpectralScalar& s, int axis);
ScalarField derivative(const ScalarField& f, int axis);

SpectralScalar laplacian_hat(const SpectralScalar& s);

/// Mean-zero g with laplacian(g) = f - mean(f); the k=0 mode is dropped.
/// If `mean_dropped` is non-null it is set when |mean(f)| exceeds a small
/// tolerance (inverting the Laplacian of a nonzero mean is undefined on
/// the torus).
ScalarField inv_laplacian(const ScalarField& f, bool* mean_dropped = nullptr);
SpectralScalar inv_laplacian_hat(const SpectralScalar& s, bool* mean_dropped = nullptr);

/// L^2-orthogonal projection onto divergence-free fields (mean preserved).
VectorField leray_project(const VectorField& v);
void leray_project_hat(SpectralScalar& v1, SpectralScalar& v2);

/// 2/3-rule truncation; idempotent.
void apply_dealias(SpectralScalar& s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);
SymTensorField dealias(const SymTensorField& f);
Tensor2Field dealias(const Tensor2Field& f);

/// Squared H^s norm: area * sum_k w_k (1+|k|^2)^s |fhat_k|^2, so s=0 is the
/// integral of |f|^2 over the domain. s in {0,1,2,3}.
double sobolev_norm_sq(const ScalarField& f, int s);
double sobolev_norm_sq(const VectorField& f, int s);
/// Frobenius convention: the off-diagonal entry counts twice.
double sobolev_norm_sq(const SymTensorField& f, int s);
double sobolev_norm_sq(const Tensor2Field& f, int s);

double sobolev_norm_sq_hat(const SpectralScalar& s, int order);
/// area * sum_k w_k |k|^2 (1+|k|^2)^s |fhat_k|^2  (H^s norm of the gradient).
double grad_sobolev_norm_sq_hat(const SpectralScalar& s, int order);

double l2_norm_sq_hat(const SpectralScalar& s);
double mean_value(const ScalarField& f);
double max_abs(const ScalarField& f);

/// Grid-quadrature integral (cell_area * sum of values); exact for
/// band-limited integrands by discrete Parseval.
double integrate(const ScalarField& f);

}  // namespace visco2d

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "visco2d/grid.hpp"

namespace visco2d {

/// Real scalar field on the collocation grid (x1 fastest).
struct ScalarField {
  GridPtr grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(GridPtr g) : grid(std::move(g)), v(grid->num_points(), 0.0) {}

  double& at(int i1, int i2) { return v[i2 * grid->n() + i1]; }
  double at(int i1, int i2) const { return v[i2 * grid->n() + i1]; }
  int size() const { return static_cast<int>(v.size()); }
};

/// Velocity-like field with components along x1 and x2.
struct VectorField {
  ScalarField c1, c2;

  VectorField() = default;
  explicit VectorField(GridPtr g) : c1(g), c2(g) {}
  GridPtr grid() const { return c1.grid; }
};

/// Symmetric 2x2 tensor field; stores the three independent entries.
struct SymTensorField {
  ScalarField a11, a12, a22;

  SymTensorField() = default;
  explicit SymTensorField(GridPtr g) : a11(g), a12(g), a22(g) {}
  GridPtr grid() const { return a11.grid; }
};

/// Full 2x2 tensor field (deformation tensor, rotations).
struct Tensor2Field {
  ScalarField a11, a12, a21, a22;

  Tensor2Field() = default;
  explicit Tensor2Field(GridPtr g) : a11(g), a12(g), a21(g), a22(g) {}
  GridPtr grid() const { return a11.grid; }
};

/// Half-spectrum Fourier coefficients of a real scalar field.
struct SpectralScalar {
  GridPtr grid;
  std::vector<std::complex<double>> m;

  SpectralScalar() = default;
  explicit SpectralScalar(GridPtr g) : grid(std::move(g)), m(grid->num_modes()) {}

  std::complex<double>& at(int ih1, int i2) { return m[i2 * grid->nh() + ih1]; }
  std::complex<double> at(int ih1, int i2) const { return m[i2 * grid->nh() + ih1]; }
};

/// Throws std::runtime_error naming `what` if the field has a NaN/Inf entry.
void require_finite(const ScalarField& f, const std::string& what);
void require_finite(const VectorField& f, const std::string& what);
void require_finite(const SymTensorField& f, const std::string& what);
void require_finite(const Tensor2Field& f, const std::string& what);
bool all_finite(const ScalarField& f);

}  // namespace visco2d

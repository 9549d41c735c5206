#include "visco2d/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace visco2d {

namespace {
constexpr double kMeanTol = 1e-10;

void check_order(int s) {
  if (s < 0 || s > 3) throw std::invalid_argument("sobolev order must be in {0,1,2,3}");
}
}  // namespace

SpectralScalar to_spectral(const ScalarField& f) {
  SpectralScalar s(f.grid);
  f.grid->forward(f.v.data(), s.m.data());
  return s;
}

ScalarField to_physical(const SpectralScalar& s) {
  ScalarField f(s.grid);
  s.grid->inverse(s.m.data(), f.v.data());
  return f;
}

SpectralScalar derivative_hat(const SpectralScalar& s, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("derivative axis must be 1 or 2");
  const Grid& g = *s.grid;
  SpectralScalar out(s.grid);
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double k = (axis == 1) ? g.wave1(ih1) : g.wave2(i2);
      const auto z = s.at(ih1, i2);
      out.at(ih1, i2) = std::complex<double>(-k * z.imag(), k * z.real());
    }
  }
  return out;
}

ScalarField derivative(const ScalarField& f, int axis) {
  require_finite(f, "derivative input");
  return to_physical(derivative_hat(to_spectral(f), axis));
}

SpectralScalar laplacian_hat(const SpectralScalar& s) {
  const Grid& g = *s.grid;
  SpectralScalar out(s.grid);
  for (int i2 = 0; i2 < g.n(); ++i2)
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) out.at(ih1, i2) = -g.ksq(ih1, i2) * s.at(ih1, i2);
  return out;
}

SpectralScalar inv_laplacian_hat(const SpectralScalar& s, bool* mean_dropped) {
  const Grid& g = *s.grid;
  SpectralScalar out(s.grid);
  if (mean_dropped != nullptr) *mean_dropped = std::abs(s.m[0]) > kMeanTol;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double k2 = g.ksq(ih1, i2);
      out.at(ih1, i2) = (k2 == 0.0) ? 0.0 : s.at(ih1, i2) / (-k2);
    }
  }
  return out;
}

ScalarField inv_laplacian(const ScalarField& f, bool* mean_dropped) {
  require_finite(f, "inv_laplacian input");
  return to_physical(inv_laplacian_hat(to_spectral(f), mean_dropped));
}

void leray_project_hat(SpectralScalar& v1, SpectralScalar& v2) {
  const Grid& g = *v1.grid;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double k1 = g.wave1(ih1);
      const double k2 = g.wave2(i2);
      const double ksq = k1 * k1 + k2 * k2;
      if (ksq == 0.0) continue;  // mean velocity is divergence-free
      const auto dot = (k1 * v1.at(ih1, i2) + k2 * v2.at(ih1, i2)) / ksq;
      v1.at(ih1, i2) -= k1 * dot;
      v2.at(ih1, i2) -= k2 * dot;
    }
  }
}

VectorField leray_project(const VectorField& v) {
  require_finite(v, "leray input");
  auto h1 = to_spectral(v.c1);
  auto h2 = to_spectral(v.c2);
  leray_project_hat(h1, h2);
  VectorField out;
  out.c1 = to_physical(h1);
  out.c2 = to_physical(h2);
  return out;
}

void apply_dealias(SpectralScalar& s) {
  const Grid& g = *s.grid;
  for (int i2 = 0; i2 < g.n(); ++i2)
    for (int ih1 = 0; ih1 < g.nh(); ++ih1)
      if (!g.mode_kept(ih1, i2)) s.at(ih1, i2) = 0.0;
}

ScalarField dealias(const ScalarField& f) {
  auto h = to_spectral(f);
  apply_dealias(h);
  return to_physical(h);
}

VectorField dealias(const VectorField& f) {
  VectorField out;
  out.c1 = dealias(f.c1);
  out.c2 = dealias(f.c2);
  return out;
}

SymTensorField dealias(const SymTensorField& f) {
  SymTensorField out;
  out.a11 = dealias(f.a11);
  out.a12 = dealias(f.a12);
  out.a22 = dealias(f.a22);
  return out;
}

Tensor2Field dealias(const Tensor2Field& f) {
  Tensor2Field out;
  out.a11 = dealias(f.a11);
  out.a12 = dealias(f.a12);
  out.a21 = dealias(f.a21);
  out.a22 = dealias(f.a22);
  return out;
}

double sobolev_norm_sq_hat(const SpectralScalar& s, int order) {
  check_order(order);
  const Grid& g = *s.grid;
  double sum = 0.0;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double ksq = g.ksq(ih1, i2);
      double w = 1.0;
      for (int p = 0; p < order; ++p) w *= 1.0 + ksq;
      sum += g.hermitian_weight(ih1) * w * std::norm(s.at(ih1, i2));
    }
  }
  return g.area() * sum;
}

double grad_sobolev_norm_sq_hat(const SpectralScalar& s, int order) {
  check_order(order);
  const Grid& g = *s.grid;
  double sum = 0.0;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double ksq = g.ksq(ih1, i2);
      double w = ksq;
      for (int p = 0; p < order; ++p) w *= 1.0 + ksq;
      sum += g.hermitian_weight(ih1) * w * std::norm(s.at(ih1, i2));
    }
  }
  return g.area() * sum;
}

double l2_norm_sq_hat(const SpectralScalar& s) { return sobolev_norm_sq_hat(s, 0); }

double sobolev_norm_sq(const ScalarField& f, int s) {
  return sobolev_norm_sq_hat(to_spectral(f), s);
}

double sobolev_norm_sq(const VectorField& f, int s) {
  return sobolev_norm_sq(f.c1, s) + sobolev_norm_sq(f.c2, s);
}

double sobolev_norm_sq(const SymTensorField& f, int s) {
  return sobolev_norm_sq(f.a11, s) + 2.0 * sobolev_norm_sq(f.a12, s) +
         sobolev_norm_sq(f.a22, s);
}

double sobolev_norm_sq(const Tensor2Field& f, int s) {
  return sobolev_norm_sq(f.a11, s) + sobolev_norm_sq(f.a12, s) + sobolev_norm_sq(f.a21, s) +
         sobolev_norm_sq(f.a22, s);
}

double mean_value(const ScalarField& f) {
  double sum = 0.0;
  for (double x : f.v) sum += x;
  return sum / f.v.size();
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double x : f.v) sum += x;
  return f.grid->cell_area() * sum;
}

}  // namespace visco2d

#include "visco2d/tensor2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace visco2d {

double Mat2::max_abs() const {
  return std::max(std::max(std::abs(a11), std::abs(a12)),
                  std::max(std::abs(a21), std::abs(a22)));
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
          a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}

Mat2 Mat2::operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

SymMat2 sqrt_spd2(const SymMat2& m) {
  const double det = m.det();
  const double tr = m.trace();
  if (det <= kEpsSpd || tr <= 0.0)
    throw std::domain_error("sqrt_spd2: matrix not safely SPD (det=" + std::to_string(det) +
                            ", tr=" + std::to_string(tr) + ")");
  const double root_det = std::sqrt(det);
  const double denom = std::sqrt(tr + 2.0 * root_det);
  return {(m.a11 + root_det) / denom, m.a12 / denom, (m.a22 + root_det) / denom};
}

PolarParts polar_decompose_left(const Mat2& f) {
  const double det = f.det();
  if (det <= kEpsSpd)
    throw std::domain_error("polar_decompose_left: degenerate deformation, det F = " +
                            std::to_string(det));
  // F F^T is SPD with det = (det F)^2; its principal root is the stretch.
  const SymMat2 fft{f.a11 * f.a11 + f.a12 * f.a12, f.a11 * f.a21 + f.a12 * f.a22,
                    f.a21 * f.a21 + f.a22 * f.a22};
  const SymMat2 stretch = sqrt_spd2(fft);
  // The rotation factor has the closed form (F + adj(F)^T) normalized,
  // which is orthogonal to rounding regardless of the stretch conditioning:
  // F R^T = F F^T + det(F) I is symmetric positive definite.
  const double p = f.a11 + f.a22;
  const double q = f.a21 - f.a12;
  const double scale = std::sqrt(p * p + q * q);
  PolarParts parts;
  parts.V = {stretch.a11 - 1.0, stretch.a12, stretch.a22 - 1.0};
  parts.R = {p / scale, -q / scale, q / scale, p / scale};
  parts.theta = std::atan2(q, p);
  return parts;
}

Mat2 rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 compose_from_strain_angle(const SymMat2& v, double theta) {
  const SymMat2 stretch{1.0 + v.a11, v.a12, 1.0 + v.a22};
  if (stretch.det() <= kEpsSpd || stretch.trace() <= 0.0)
    throw std::domain_error("compose_from_strain_angle: I+V not positive definite");
  return stretch.full() * rotation_matrix(theta);
}

double gamma_coefficient(const Mat2& gradu, const SymMat2& v) {
  const double denom = 2.0 + v.trace();
  if (std::abs(denom) <= kEpsTrace)
    throw std::domain_error("gamma_coefficient: 2 + tr V near zero (" + std::to_string(denom) +
                            ")");
  const double omega12 = 0.5 * (gradu.a12 - gradu.a21);  // (d2 u1 - d1 u2)/2
  // d_k u1 V_k2 - d_k u2 V_k1, summed over k, with (grad u)_{ik} = d_k u_i.
  const double q = gradu.a11 * v.a12 + gradu.a12 * v.a22 - gradu.a21 * v.a11 -
                   gradu.a22 * v.a12;
  return (v.trace() * omega12 - q) / denom;
}

VelocitySplit velocity_split(const Mat2& gradu) {
  VelocitySplit out;
  out.S = {gradu.a11, 0.5 * (gradu.a12 + gradu.a21), gradu.a22};
  out.omega12 = 0.5 * (gradu.a12 - gradu.a21);
  return out;
}

SymMat2 a_commutator(const SymMat2& v) {
  return {2.0 * v.a12, v.a22 - v.a11, -2.0 * v.a12};
}

SymMat2 inv_i_plus_v(const SymMat2& v) {
  const SymMat2 m{1.0 + v.a11, v.a12, 1.0 + v.a22};
  const double det = m.det();
  if (det <= kEpsSpd)
    throw std::domain_error("inv_i_plus_v: I+V near singular, det = " + std::to_string(det));
  return {m.a22 / det, -m.a12 / det, m.a11 / det};
}

double operator_norm(const Mat2& m) {
  // Largest singular value of a 2x2 via the M M^T invariants.
  const double a = m.a11 * m.a11 + m.a12 * m.a12;
  const double b = m.a11 * m.a21 + m.a12 * m.a22;
  const double c = m.a21 * m.a21 + m.a22 * m.a22;
  const double tr = a + c;
  const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
  return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

}  // namespace visco2d

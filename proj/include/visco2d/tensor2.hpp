#pragma once

namespace visco2d {

/// Singularity guards. The small-strain regime keeps fields far from these;
/// tripping one signals a broken discretization, not a soft error.
inline constexpr double kEpsSpd = 1e-8;
inline constexpr double kEpsTrace = 1e-8;

/// Plain 2x2 matrix, row-major entries.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  double max_abs() const;

  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator*(double s) const;
  Mat2 transpose() const { return {a11, a21, a12, a22}; }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// The constant rotation generator [[0,-1],[1,0]].
  static Mat2 rotation_generator() { return {0.0, -1.0, 1.0, 0.0}; }
};

/// Symmetric 2x2 matrix (a21 == a12 by construction).
struct SymMat2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  double det() const { return a11 * a22 - a12 * a12; }
  double trace() const { return a11 + a22; }
  Mat2 full() const { return {a11, a12, a12, a22}; }

  SymMat2 operator+(const SymMat2& o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
  SymMat2 operator-(const SymMat2& o) const { return {a11 - o.a11, a12 - o.a12, a22 - o.a22}; }
  SymMat2 operator*(double s) const { return {a11 * s, a12 * s, a22 * s}; }
};

/// Rotation-strain factors of a deformation tensor F = (I+V) R(theta).
struct PolarParts {
  SymMat2 V;     // strain: I+V is the symmetric positive definite factor
  Mat2 R;        // rotation, R R^T = I, det R = 1
  double theta;  // rotation angle in (-pi, pi]
};

/// Principal square root of a symmetric positive definite matrix, closed
/// form S = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
/// Throws std::domain_error when det M <= kEpsSpd or tr M <= 0.
SymMat2 sqrt_spd2(const SymMat2& m);

/// Left polar decomposition F = (I+V) R. Requires det F > kEpsSpd.
PolarParts polar_decompose_left(const Mat2& f);

/// Inverse map: F = (I+V) R(theta). Requires I+V positive definite.
Mat2 compose_from_strain_angle(const SymMat2& v, double theta);

Mat2 rotation_matrix(double theta);

/// gamma = [tr V w12(u) - (d_k u1 V_k2 - d_k u2 V_k1)] / (2 + tr V),
/// with the gradient convention (grad u)_{ij} = d_j u_i.
/// Throws std::domain_error when |2 + tr V| <= kEpsTrace.
double gamma_coefficient(const Mat2& gradu, const SymMat2& v);

struct VelocitySplit {
  SymMat2 S;       // symmetric part of grad u
  double omega12;  // (d2 u1 - d1 u2) / 2
};
VelocitySplit velocity_split(const Mat2& gradu);

/// V A - A V with A = rotation_generator(); symmetric and traceless for
/// symmetric V: [[2 V12, V22-V11],[V22-V11, -2 V12]].
SymMat2 a_commutator(const SymMat2& v);

/// Exact inverse of I + V. Throws std::domain_error near singularity.
SymMat2 inv_i_plus_v(const SymMat2& v);

/// Largest singular value (operator norm).
double operator_norm(const Mat2& m);

}  // namespace visco2d

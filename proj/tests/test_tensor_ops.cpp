#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "visco2d/tensor2.hpp"

using namespace visco2d;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double mdiff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

/// Independent square-root oracle through Eigen's self-adjoint solver.
SymMat2 eigen_sqrt(const SymMat2& m) {
  Eigen::Matrix2d em;
  em << m.a11, m.a12, m.a12, m.a22;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(em);
  const Eigen::Matrix2d s = es.operatorSqrt();
  return {s(0, 0), s(0, 1), s(1, 1)};
}

std::mt19937_64 rng(123);

Mat2 random_deformation(double det_lo, double det_hi) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> target(det_lo, det_hi);
  while (true) {
    Mat2 f{entry(rng), entry(rng), entry(rng), entry(rng)};
    if (f.det() <= 1e-3) continue;
    return f * std::sqrt(target(rng) / f.det());
  }
}

}  // namespace

TEST_CASE("sqrt_spd2 closed form") {
  CHECK(mdiff(sqrt_spd2({1, 0, 1}).full(), Mat2::identity()) < 1e-15);
  const SymMat2 s = sqrt_spd2({4.0, 0.0, 0.25});
  CHECK(s.a11 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.a22 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(s.a12) < 1e-15);

  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    const double b11 = entry(rng), b12 = entry(rng), b21 = entry(rng), b22 = entry(rng);
    const SymMat2 m{b11 * b11 + b12 * b12 + 0.02, b11 * b21 + b12 * b22,
                    b21 * b21 + b22 * b22 + 0.02};
    const SymMat2 s2 = sqrt_spd2(m);
    // definition check and oracle check
    CHECK(mdiff(s2.full() * s2.full(), m.full()) < 1e-12);
    CHECK(mdiff(s2.full(), eigen_sqrt(m).full()) < 1e-12);
  }

  CHECK_THROWS_AS((void)sqrt_spd2({1.0, 1.0, 1.0}), std::domain_error);   // det 0
  CHECK_THROWS_AS((void)sqrt_spd2({-1.0, 0.0, -1.0}), std::domain_error); // tr < 0
}

TEST_CASE("polar decomposition: trivial and analytic cases") {
  const PolarParts id = polar_decompose_left(Mat2::identity());
  CHECK(std::abs(id.theta) < 1e-15);
  CHECK(mdiff(id.R, Mat2::identity()) < 1e-15);
  CHECK(std::abs(id.V.a11) + std::abs(id.V.a12) + std::abs(id.V.a22) < 1e-15);

  const PolarParts rot = polar_decompose_left(rotation_matrix(0.7));
  CHECK(rot.theta == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(std::abs(rot.V.a11) + std::abs(rot.V.a12) + std::abs(rot.V.a22) < 1e-13);

  const PolarParts st = polar_decompose_left({2.0, 0.0, 0.0, 0.5});
  CHECK(st.theta == doctest::Approx(0.0));
  CHECK(st.V.a11 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(st.V.a22 == doctest::Approx(-0.5).epsilon(1e-14));
  // det F = 1 here, so tr V = -det V (both equal 1/2)
  CHECK(st.V.trace() == doctest::Approx(-st.V.det()).epsilon(1e-14));

  CHECK_THROWS_AS((void)polar_decompose_left({1.0, 1.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS((void)polar_decompose_left({-1.0, 0.0, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("polar decomposition properties on random deformations") {
  for (int trial = 0; trial < 1000; ++trial) {
    const Mat2 f = random_deformation(0.5, 2.0);
    const PolarParts p = polar_decompose_left(f);
    const Mat2 stretch{1.0 + p.V.a11, p.V.a12, p.V.a12, 1.0 + p.V.a22};
    CHECK(mdiff(stretch * p.R, f) <= 1e-12);
    CHECK(mdiff(p.R * p.R.transpose(), Mat2::identity()) <= 1e-12);
    // I+V positive definite
    CHECK(stretch.det() > 0.0);
    CHECK(stretch.trace() > 0.0);
    CHECK(p.theta == doctest::Approx(std::atan2(p.R.a21, p.R.a11)));
  }
}

TEST_CASE("tr V = -det V whenever det F = 1") {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 0.4 + 0.8 * std::abs(entry(rng));
    const double b = entry(rng), c = entry(rng);
    const Mat2 f{a, b, c, (1.0 + b * c) / a};  // det F = 1 exactly
    const PolarParts p = polar_decompose_left(f);
    CHECK(std::abs(p.V.trace() + p.V.det()) <= 1e-12);
  }
}

TEST_CASE("compose_from_strain_angle inverts the decomposition") {
  CHECK(mdiff(compose_from_strain_angle({0, 0, 0}, 0.0), Mat2::identity()) < 1e-15);
  const Mat2 quarter = compose_from_strain_angle({0, 0, 0}, kPi / 2);
  CHECK(mdiff(quarter, Mat2::rotation_generator()) < 1e-15);

  std::uniform_real_distribution<double> entry(-0.4, 0.4);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const SymMat2 v{0.2 + entry(rng), 0.3 * entry(rng), 0.2 + entry(rng)};
    const double theta = ang(rng);
    const Mat2 f = compose_from_strain_angle(v, theta);
    const PolarParts p = polar_decompose_left(f);
    CHECK(std::abs(p.V.a11 - v.a11) < 1e-10);
    CHECK(std::abs(p.V.a12 - v.a12) < 1e-10);
    CHECK(std::abs(p.V.a22 - v.a22) < 1e-10);
    double dtheta = p.theta - theta;
    dtheta -= 2 * kPi * std::round(dtheta / (2 * kPi));
    CHECK(std::abs(dtheta) < 1e-10);
  }

  CHECK_THROWS_AS((void)compose_from_strain_angle({-2.0, 0.0, 0.0}, 0.1), std::domain_error);
}

TEST_CASE("gamma coefficient") {
  CHECK(gamma_coefficient({0.3, -0.1, 0.7, 0.2}, {0, 0, 0}) == doctest::Approx(0.0));
  // pure shear u = (x2, 0): d2 u1 = 1; V = diag(1, 0)
  CHECK(gamma_coefficient({0, 1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0 / 6.0));
  CHECK(gamma_coefficient({0, 0, 0, 0}, {0.4, -0.2, 0.1}) == doctest::Approx(0.0));

  // invariance under gradu -> gradu + c I
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 gu{entry(rng), entry(rng), entry(rng), entry(rng)};
    const SymMat2 v{0.3 * entry(rng), 0.3 * entry(rng), 0.3 * entry(rng)};
    const double c = entry(rng);
    const Mat2 shifted{gu.a11 + c, gu.a12, gu.a21, gu.a22 + c};
    CHECK(std::abs(gamma_coefficient(gu, v) - gamma_coefficient(shifted, v)) <= 1e-14);
  }

  CHECK_THROWS_AS((void)gamma_coefficient({0, 0, 0, 0}, {-1.0, 0.0, -1.0}),
                  std::domain_error);
}

TEST_CASE("velocity_split") {
  const VelocitySplit s1 = velocity_split(Mat2::identity());
  CHECK(mdiff(s1.S.full(), Mat2::identity()) < 1e-15);
  CHECK(s1.omega12 == 0.0);

  const VelocitySplit s2 = velocity_split({0, 1, 0, 0});
  CHECK(s2.S.a12 == doctest::Approx(0.5));
  CHECK(s2.omega12 == doctest::Approx(0.5));

  const double a = 0.83;
  const VelocitySplit s3 = velocity_split({0, -a, a, 0});
  CHECK(std::abs(s3.S.a11) + std::abs(s3.S.a12) + std::abs(s3.S.a22) < 1e-15);
  CHECK(s3.omega12 == doctest::Approx(-a));

  // exact recomposition: grad u = S - omega12 * A
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 gu{entry(rng), entry(rng), entry(rng), entry(rng)};
    const VelocitySplit vs = velocity_split(gu);
    const Mat2 back = vs.S.full() - Mat2::rotation_generator() * vs.omega12;
    CHECK(mdiff(back, gu) < 1e-15);
  }
}

TEST_CASE("a_commutator") {
  CHECK(a_commutator({1, 0, 1}).full().max_abs() == 0.0);
  const SymMat2 d = a_commutator({2.0, 0.0, 5.0});
  CHECK(d.a11 == 0.0);
  CHECK(d.a12 == doctest::Approx(3.0));  // b - a
  const SymMat2 o = a_commutator({0.0, 1.5, 0.0});
  CHECK(o.a11 == doctest::Approx(3.0));
  CHECK(o.a22 == doctest::Approx(-3.0));
  CHECK(o.a12 == 0.0);

  // traceless and symmetric by construction, matches V A - A V
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMat2 v{entry(rng), entry(rng), entry(rng)};
    const Mat2 a = Mat2::rotation_generator();
    const Mat2 direct = v.full() * a - a * v.full();
    CHECK(mdiff(a_commutator(v).full(), direct) < 1e-15);
    CHECK(std::abs(direct.a12 - direct.a21) <= 1e-14);
    CHECK(std::abs(direct.trace()) <= 1e-15);
  }
}

TEST_CASE("inv_i_plus_v") {
  CHECK(mdiff(inv_i_plus_v({0, 0, 0}).full(), Mat2::identity()) < 1e-15);
  const SymMat2 i1 = inv_i_plus_v({1.0, 0.0, -0.5});  // det(I+V) = 1 case
  CHECK(i1.a11 == doctest::Approx(0.5));
  CHECK(i1.a22 == doctest::Approx(2.0));

  std::uniform_real_distribution<double> entry(-0.3, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMat2 v{entry(rng), entry(rng), entry(rng)};
    const Mat2 stretch{1.0 + v.a11, v.a12, v.a12, 1.0 + v.a22};
    const Mat2 prod = stretch * inv_i_plus_v(v).full();
    CHECK(mdiff(prod, Mat2::identity()) <= 1e-13);
  }

  CHECK_THROWS_AS((void)inv_i_plus_v({-1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("operator_norm matches the largest singular value") {
  CHECK(operator_norm(Mat2::identity()) == doctest::Approx(1.0));
  CHECK(operator_norm({3.0, 0.0, 0.0, 0.5}) == doctest::Approx(3.0));
  CHECK(operator_norm(rotation_matrix(1.1)) == doctest::Approx(1.0).epsilon(1e-14));
}

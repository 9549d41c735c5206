#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <random>

#include "test_support.hpp"
#include "visco2d/spectral.hpp"

using namespace visco2d;
using namespace visco2d::testing;

TEST_CASE("make_grid validates and exposes frequency tables") {
  const auto g = make_grid(8, 2 * kPi);
  CHECK(g->n() == 8);
  // fftfreq layout spans {-4,...,3}
  std::vector<int> freqs = g->freq_table();
  std::sort(freqs.begin(), freqs.end());
  CHECK(freqs.front() == -4);
  CHECK(freqs.back() == 3);
  CHECK(static_cast<int>(freqs.size()) == 8);

  const auto g64 = make_grid(64, 2 * kPi);
  CHECK(g64->dealias_limit() == 21);
  CHECK(g64->mode_kept(21, 0));
  CHECK_FALSE(g64->mode_kept(22, 0));
  CHECK_FALSE(g64->mode_kept(0, 22));
  CHECK(g64->mode_kept(0, 64 - 21));  // k2 = -21

  CHECK_THROWS_AS((void)make_grid(7, 2 * kPi), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(6, 2 * kPi), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(64, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(64, -1.0), std::invalid_argument);
}

TEST_CASE("derivative reproduces analytic derivatives") {
  const auto g = make_grid(32, 2 * kPi);
  const auto f = field_of(g, [](double x, double) { return std::sin(x); });
  const auto df = derivative(f, 1);
  const auto expected = field_of(g, [](double x, double) { return std::cos(x); });
  CHECK(max_diff(df, expected) < 1e-13);

  ScalarField c(g);
  for (auto& x : c.v) x = 3.7;
  CHECK(max_abs(derivative(c, 1)) < 1e-14);
  CHECK(max_abs(derivative(c, 2)) < 1e-14);

  const auto f2 = field_of(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const auto df2 = derivative(f2, 2);
  const auto expected2 =
      field_of(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  CHECK(max_diff(df2, expected2) < 1e-13);

  // output mean is zero
  CHECK(std::abs(mean_value(df2)) < 1e-15);
}

TEST_CASE("inv_laplacian inverts the mean-free Laplacian") {
  const auto g = make_grid(32, 2 * kPi);
  const auto f = field_of(g, [](double x, double) { return std::cos(x); });
  bool dropped = true;
  const auto s = inv_laplacian(f, &dropped);
  CHECK_FALSE(dropped);
  const auto expected = field_of(g, [](double x, double) { return -std::cos(x); });
  CHECK(max_diff(s, expected) < 1e-13);

  ScalarField z(g);
  CHECK(max_abs(inv_laplacian(z)) == 0.0);

  auto shifted = f;
  for (auto& x : shifted.v) x += 5.0;
  const auto s2 = inv_laplacian(shifted, &dropped);
  CHECK(dropped);  // the k=0 mode is annihilated and flagged
  CHECK(max_diff(s2, expected) < 1e-13);
}

TEST_CASE("inv_laplacian is a right inverse on mean-free data") {
  const auto g = make_grid(64, 2 * kPi);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_band_limited(g, rng, 15);
    const double m = mean_value(f);
    for (auto& x : f.v) x -= m;
    const auto lap_of_inv = to_physical(laplacian_hat(to_spectral(inv_laplacian(f))));
    CHECK(max_diff(lap_of_inv, f) < 1e-12 * std::max(1.0, max_abs(f)));
  }
}

TEST_CASE("leray projection removes gradients and keeps solenoidal fields") {
  const auto g = make_grid(64, 2 * kPi);
  // v = grad-perp(psi) with psi = sin x sin y is already solenoidal
  const auto v = vector_of(
      g, [](double x, double y) { return -std::sin(x) * std::cos(y); },
      [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(max_diff(leray_project(v), v) < 1e-13);

  // pure gradient of phi = cos y projects to zero
  const auto grad = vector_of(g, [](double, double) { return 0.0; },
                              [](double, double y) { return -std::sin(y); });
  CHECK(max_abs(leray_project(grad).c1) < 1e-13);
  CHECK(max_abs(leray_project(grad).c2) < 1e-13);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    VectorField w;
    w.c1 = random_band_limited(g, rng, 18);
    w.c2 = random_band_limited(g, rng, 18);
    const auto pw = leray_project(w);
    CHECK(divergence_l2(pw) < 1e-12);
    // idempotent
    CHECK(max_diff(leray_project(pw), pw) < 1e-13);
  }
}

TEST_CASE("leray projection is self-adjoint in the L2 pairing") {
  const auto g = make_grid(64, 2 * kPi);
  std::mt19937_64 rng(17);
  auto dot = [&](const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int i = 0; i < a.c1.size(); ++i) s += a.c1.v[i] * b.c1.v[i] + a.c2.v[i] * b.c2.v[i];
    return g->cell_area() * s;
  };
  for (int trial = 0; trial < 5; ++trial) {
    VectorField u, v;
    u.c1 = random_band_limited(g, rng, 15);
    u.c2 = random_band_limited(g, rng, 15);
    v.c1 = random_band_limited(g, rng, 15);
    v.c2 = random_band_limited(g, rng, 15);
    const double lhs = dot(leray_project(u), v);
    const double rhs = dot(u, leray_project(v));
    const double scale = std::sqrt(dot(u, u) * dot(v, v));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("dealias zeroes the top third of modes and is idempotent") {
  const auto g = make_grid(64, 2 * kPi);
  std::mt19937_64 rng(3);
  const auto f = random_band_limited(g, rng, 21);
  CHECK(max_diff(dealias(f), f) < 1e-14);

  // a pure mode at k1 = n/2 - 1 = 31 is outside the mask
  const auto hi = field_of(g, [](double x, double) { return std::cos(31.0 * x); });
  CHECK(max_abs(dealias(hi)) < 1e-13);

  const auto mixed = field_of(g, [](double x, double y) {
    return std::sin(3 * x) * std::cos(2 * y) + 0.5 * std::cos(30.0 * x);
  });
  const auto once = dealias(mixed);
  CHECK(max_diff(dealias(once), once) < 1e-14);
}

TEST_CASE("derivative commutes with dealias on retained modes") {
  const auto g = make_grid(64, 2 * kPi);
  std::mt19937_64 rng(29);
  ScalarField f(g);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : f.v) x = dist(rng);  // full-spectrum noise
  for (int axis : {1, 2}) {
    const auto a = to_spectral(derivative(dealias(f), axis));
    const auto b = to_spectral(dealias(derivative(f, axis)));
    double worst = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("sobolev norms match hand values and quadrature") {
  const auto g = make_grid(64, 2 * kPi);
  const auto f = field_of(g, [](double x, double) { return std::sin(x); });
  CHECK(sobolev_norm_sq(f, 0) == doctest::Approx(2 * kPi * kPi).epsilon(1e-13));
  CHECK(sobolev_norm_sq(f, 1) == doctest::Approx(4 * kPi * kPi).epsilon(1e-13));
  CHECK(sobolev_norm_sq(ScalarField(g), 3) == 0.0);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = random_band_limited(g, rng, 20);
    double quad = 0.0;
    for (double x : r.v) quad += x * x;
    quad *= g->cell_area();
    CHECK(sobolev_norm_sq(r, 0) == doctest::Approx(quad).epsilon(1e-10));
  }
  CHECK_THROWS_AS((void)sobolev_norm_sq(f, 4), std::invalid_argument);
}

TEST_CASE("non-finite inputs are rejected by name") {
  const auto g = make_grid(16, 2 * kPi);
  ScalarField f(g);
  f.v[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)derivative(f, 1), std::runtime_error);
  CHECK_THROWS_AS((void)inv_laplacian(f), std::runtime_error);
  VectorField v(g);
  v.c2.v[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)leray_project(v), std::runtime_error);
}

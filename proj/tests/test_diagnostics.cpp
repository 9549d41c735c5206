#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "visco2d/diagnostics.hpp"
#include "visco2d/init.hpp"
#include "visco2d/sim.hpp"
#include "visco2d/spectral.hpp"

using namespace visco2d;
using namespace visco2d::testing;

namespace {
const GridPtr g64 = make_grid(64, 2 * kPi);
}

TEST_CASE("basic_energy on hand-checkable states") {
  StrainState zero{VectorField(g64), SymTensorField(g64)};
  const EnergyPair e0 = basic_energy(zero);
  CHECK(e0.basic == 0.0);
  CHECK(e0.alt == 0.0);

  // constant admissible V = diag(1, -1/2): both forms equal (2 pi)^2 * 9/4
  StrainState c{VectorField(g64), SymTensorField(g64)};
  for (int i = 0; i < c.V.a11.size(); ++i) {
    c.V.a11.v[i] = 1.0;
    c.V.a22.v[i] = -0.5;
  }
  const double box = 4 * kPi * kPi;
  const EnergyPair ec = basic_energy(c);
  CHECK(ec.basic == doctest::Approx(box * 2.25).epsilon(1e-13));
  CHECK(ec.alt == doctest::Approx(box * 2.25).epsilon(1e-13));

  // constraint-violating V = diag(1, 1): the two forms split
  StrainState b{VectorField(g64), SymTensorField(g64)};
  for (int i = 0; i < b.V.a11.size(); ++i) {
    b.V.a11.v[i] = 1.0;
    b.V.a22.v[i] = 1.0;
  }
  const EnergyPair eb = basic_energy(b);
  CHECK(eb.basic == doctest::Approx(box * 6.0).epsilon(1e-13));
  CHECK(eb.alt == doctest::Approx(0.0));
}

TEST_CASE("energy gap is bounded by the tr/det constraint residual") {
  std::mt19937_64 rng(71);
  SymTensorField V;
  V.a11 = random_band_limited(g64, rng, 9, 0.3);
  V.a12 = random_band_limited(g64, rng, 9, 0.3);
  V.a22 = random_band_limited(g64, rng, 9, 0.3);
  StrainState s{VectorField(g64), V};
  const EnergyPair e = basic_energy(s);
  const ConstraintResiduals r = constraint_residuals(s);
  CHECK(std::abs(e.basic - e.alt) <= 2.0 * r.trdet * g64->area() + 1e-12);
}

TEST_CASE("energy_law_residual input validation and equilibrium") {
  std::vector<DiagnosticsRecord> one(1);
  CHECK_THROWS_AS((void)energy_law_residual(one, 1.0), std::invalid_argument);

  std::vector<DiagnosticsRecord> eq(3);
  eq[0].t = 0.0;
  eq[1].t = 0.1;
  eq[2].t = 0.2;
  CHECK(energy_law_residual(eq, 1.0) == 0.0);

  eq[2].t = 0.25;  // non-uniform cadence rejected
  CHECK_THROWS_AS((void)energy_law_residual(eq, 1.0), std::invalid_argument);
}

TEST_CASE("pure Navier-Stokes runs satisfy the energy balance tightly") {
  InitRecipe r;
  r.kind = InitKind::taylor_green;
  r.amplitude = 0.2;
  const MatchedStates init = build_initial_states(g64, r, 1e-3);
  RunOptions o;
  o.mu = 1.0;
  o.scheme.dt = 1e-3;
  o.t_final = 0.2;
  o.record_every = 1;
  const auto traj = run_strain(init.strain, o);
  CHECK(traj.stable);
  CHECK(energy_law_residual(traj.series, 1.0) <= 1e-8);
  const Certificate cert = theorem_certificate(traj.series);
  CHECK(cert.energy_monotone);
  CHECK(cert.rho_sup <= 1.0 + 1e-12);
}

TEST_CASE("auxiliary_u definition checks") {
  // constant V: div V = 0, so U = u
  StrainState s{taylor_green_velocity(g64, 0.3), SymTensorField(g64)};
  for (int i = 0; i < s.V.a11.size(); ++i) {
    s.V.a11.v[i] = 0.4;
    s.V.a12.v[i] = -0.1;
  }
  CHECK(max_diff(auxiliary_u(s, 1.0), s.u) < 1e-13);

  // single mode: U = (2/mu) invlap div V, mode factor -1/|k|^2
  const double kx = 2.0, ky = 1.0;
  StrainState sm{VectorField(g64), SymTensorField(g64)};
  sm.V.a11 = field_of(g64, [&](double x, double y) { return std::cos(kx * x + ky * y); });
  const double mu = 2.0;
  const VectorField U = auxiliary_u(sm, mu);
  // div V = (d1 V11, 0) = (-kx sin(kx x + ky y), 0); invlap multiplies by -1/|k|^2
  const double ksq = kx * kx + ky * ky;
  const VectorField expected = vector_of(
      g64,
      [&](double x, double y) { return (2.0 / mu) * (kx / ksq) * std::sin(kx * x + ky * y); },
      [](double, double) { return 0.0; });
  CHECK(max_diff(U, expected) <= 1e-13);

  // lap U = lap u + (2/mu) div V under the spectral Laplacian
  std::mt19937_64 rng(83);
  StrainState sr{random_solenoidal(g64, rng, 9, 0.2), SymTensorField(g64)};
  sr.V.a11 = random_band_limited(g64, rng, 9, 0.2);
  sr.V.a12 = random_band_limited(g64, rng, 9, 0.2);
  sr.V.a22 = random_band_limited(g64, rng, 9, 0.2);
  const VectorField Ur = auxiliary_u(sr, mu);
  VectorField lapU;
  lapU.c1 = to_physical(laplacian_hat(to_spectral(Ur.c1)));
  lapU.c2 = to_physical(laplacian_hat(to_spectral(Ur.c2)));
  const VectorField divv = sym_divergence(sr.V);
  VectorField expect2;
  expect2.c1 = to_physical(laplacian_hat(to_spectral(sr.u.c1)));
  expect2.c2 = to_physical(laplacian_hat(to_spectral(sr.u.c2)));
  for (int i = 0; i < expect2.c1.size(); ++i) {
    expect2.c1.v[i] += (2.0 / mu) * divv.c1.v[i];
    expect2.c2.v[i] += (2.0 / mu) * divv.c2.v[i];
  }
  CHECK(max_diff(lapU, expect2) <= 1e-12 * std::max(1.0, max_abs(expect2.c1)));
}

TEST_CASE("u_balance on an equilibrium window is identically zero") {
  StrainState zero{VectorField(g64), SymTensorField(g64)};
  const BalanceReport rep = u_balance({zero, zero, zero}, 1e-3, 1.0);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.residual == 0.0);
  CHECK(rep.dt_used == 1e-3);
}

TEST_CASE("u_balance closes on strain-system windows at coarse steps") {
  InitRecipe r;  // default warm start
  const MatchedStates init = build_initial_states(g64, r, 1e-3);
  const double dt = 1e-2;
  std::array<StrainState, 3> window{};
  RunOptions o;
  o.mu = 1.0;
  o.scheme.dt = dt;
  o.t_final = 0.1 + dt;
  o.record_every = 1;
  run_strain(init.strain, o, [&](const StrainState& s, double, int k) {
    if (k == 9) window[0] = s;
    if (k == 10) window[1] = s;
    if (k == 11) window[2] = s;
  });
  const BalanceReport rep = u_balance(window, dt, 1.0);
  // the spatial pairing is exact; only the O(dt^4) window quadrature remains
  CHECK(rep.residual <= 1e-7 * std::max(std::abs(rep.lhs), std::abs(rep.rhs)));
  CHECK(rep.pressure_used == PressureMode::projection);
  CHECK_THROWS_AS((void)u_balance(window, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("record fills norms, residuals and trapezoid accumulators") {
  Accumulators acc;
  StrainState zero{VectorField(g64), SymTensorField(g64)};
  const DiagnosticsRecord r0 = record(zero, 0.0, 1.0, acc);
  CHECK(r0.E_basic == 0.0);
  CHECK(r0.h2_u == 0.0);
  CHECK(r0.acc_gradu_h2 == 0.0);

  // single mode velocity: |grad u|^2 = |k|^2 |u|^2 by Parseval
  const double kx = 3.0, ky = 1.0;
  const VectorField u = vector_of(
      g64, [&](double x, double y) { return ky * std::cos(kx * x + ky * y); },
      [&](double x, double y) { return -kx * std::cos(kx * x + ky * y); });
  StrainState s{u, SymTensorField(g64)};
  Accumulators acc2;
  const DiagnosticsRecord r1 = record(s, 0.0, 1.0, acc2);
  const double ksq = kx * kx + ky * ky;
  const double l2 = sobolev_norm_sq(u, 0);
  CHECK(r1.gradu_l2sq == doctest::Approx(ksq * l2).epsilon(1e-12));

  // two equal states one dt apart: trapezoid increment = dt * value
  const DiagnosticsRecord r2 = record(s, 0.5, 1.0, acc2);
  const double gradu_h2 = r1.acc_gradu_h2;  // zero before priming
  CHECK(gradu_h2 == 0.0);
  CHECK(r2.acc_gradu_h2 == doctest::Approx(0.5 * (ksq * (1 + ksq) * (1 + ksq)) * l2)
                               .epsilon(1e-12));
}

TEST_CASE("theorem_certificate degenerate and decaying cases") {
  std::vector<DiagnosticsRecord> eq(3);
  eq[0].t = 0.0;
  eq[1].t = 0.5;
  eq[2].t = 1.0;
  const Certificate c = theorem_certificate(eq);
  CHECK(c.rho_sup == 1.0);  // 0/0 guarded
  CHECK(c.rho_dis == 0.0);
  CHECK(c.energy_monotone);
}

TEST_CASE("space-time dissipation stays below half the initial energy") {
  InitRecipe r;  // default warm start
  const MatchedStates init = build_initial_states(g64, r, 1e-3);
  RunOptions o;
  o.mu = 1.0;
  o.scheme.dt = 1e-3;
  o.t_final = 0.5;
  o.record_every = 1;
  const auto traj = run_strain(init.strain, o);
  CHECK(traj.stable);

  const double u0_sq = sobolev_norm_sq(init.strain.u, 0);
  const double v0_sq = sobolev_norm_sq(init.strain.V, 0);
  std::vector<double> g(traj.series.size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = traj.series[i].gradu_l2sq;
  double prev = 0.0;
  for (size_t i = 1; i < g.size(); ++i) {
    const double acc = integrate_series(g, 1e-3, static_cast<int>(i));
    CHECK(acc >= prev - 1e-14);  // monotone in t
    prev = acc;
  }
  CHECK(prev <= 0.5 * (u0_sq + v0_sq) * 1.01 + 1e-12);

  // E_basic is a sum of squares while the tr/det constraint holds
  for (const auto& rec : traj.series) {
    CHECK(rec.E_basic >= -1e-12);
    CHECK(std::abs(rec.E_basic - rec.E_alt) <=
          2.0 * rec.residuals.trdet * g64->area() + 1e-12);
  }
}

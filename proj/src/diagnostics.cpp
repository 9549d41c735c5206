#include "visco2d/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "visco2d/spectral.hpp"

namespace visco2d {

namespace {

/// L2 pairing of two spectral scalars via Parseval.
double inner_hat(const SpectralScalar& a, const SpectralScalar& b) {
  const Grid& g = *a.grid;
  double sum = 0.0;
  for (int i2 = 0; i2 < g.n(); ++i2)
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const int idx = i2 * g.nh() + ih1;
      sum += g.hermitian_weight(ih1) * (a.m[idx] * std::conj(b.m[idx])).real();
    }
  return g.area() * sum;
}

struct SpecU {
  SpectralScalar u1, u2;
};

SpecU lap_aux_hat(const StrainState& s, double mu) {
  // lap U = lap u + (2/mu) div V, spectrally.
  const Grid& g = *s.u.grid();
  SpecU out;
  out.u1 = to_spectral(s.u.c1);
  out.u2 = to_spectral(s.u.c2);
  auto v11 = to_spectral(s.V.a11);
  auto v12 = to_spectral(s.V.a12);
  auto v22 = to_spectral(s.V.a22);
  const double c = 2.0 / mu;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const int idx = i2 * g.nh() + ih1;
      const double k1 = g.wave1(ih1);
      const double k2 = g.wave2(i2);
      const std::complex<double> ik1(0.0, k1), ik2(0.0, k2);
      const double ksq = g.ksq(ih1, i2);
      out.u1.m[idx] = -ksq * out.u1.m[idx] + c * (ik1 * v11.m[idx] + ik2 * v12.m[idx]);
      out.u2.m[idx] = -ksq * out.u2.m[idx] + c * (ik1 * v12.m[idx] + ik2 * v22.m[idx]);
    }
  }
  return out;
}

double h_s_sq(const SpecU& v, int order) {
  return sobolev_norm_sq_hat(v.u1, order) + sobolev_norm_sq_hat(v.u2, order);
}

}  // namespace

EnergyPair basic_energy(const StrainState& s) {
  EnergyPair e;
  double basic = 0.0, alt = 0.0;
  for (int i = 0; i < s.u.c1.size(); ++i) {
    const double usq = s.u.c1.v[i] * s.u.c1.v[i] + s.u.c2.v[i] * s.u.c2.v[i];
    const double a = s.V.a11.v[i], b = s.V.a12.v[i], c = s.V.a22.v[i];
    basic += usq + (a * a + 2.0 * b * b + c * c) + 2.0 * (a + c);
    const double d1 = a - c, d2 = 2.0 * b;
    alt += usq + d1 * d1 + d2 * d2;
  }
  const double w = s.u.grid()->cell_area();
  e.basic = w * basic;
  e.alt = w * alt;
  return e;
}

EnergyPair basic_energy(const RotStrainState& s) {
  return basic_energy(StrainState{s.u, s.V});
}

double integrate_series(const std::vector<double>& g, double h, int upto) {
  if (upto <= 0) return 0.0;
  const int m = upto;  // number of intervals
  if (m == 1) {
    // Cubic end-interval rule when enough samples exist, else trapezoid.
    if (g.size() >= 4) return h / 24.0 * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]);
    return 0.5 * h * (g[0] + g[1]);
  }
  if (m == 2) return h / 3.0 * (g[0] + 4.0 * g[1] + g[2]);
  double total = 0.0;
  int start = 0;
  if (m % 2 == 1) {
    // 3/8 rule on the first three intervals, Simpson on the (even) rest.
    total += 3.0 * h / 8.0 * (g[0] + 3.0 * g[1] + 3.0 * g[2] + g[3]);
    start = 3;
  }
  for (int i = start; i + 2 <= m; i += 2)
    total += h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
  return total;
}

double energy_law_residual(const std::vector<DiagnosticsRecord>& series, double mu) {
  if (series.size() < 2)
    throw std::invalid_argument("energy_law_residual: need at least two records");
  const double h = series[1].t - series[0].t;
  for (size_t i = 1; i < series.size(); ++i) {
    const double step = series[i].t - series[i - 1].t;
    if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("energy_law_residual: non-uniform record cadence");
  }
  std::vector<double> g(series.size());
  for (size_t i = 0; i < series.size(); ++i) g[i] = series[i].gradu_l2sq;
  const double e0 = series[0].E_basic;
  const double scale = std::max(std::abs(e0), 1e-300);
  double worst = 0.0;
  for (size_t i = 1; i < series.size(); ++i) {
    const double lhs = 0.5 * (series[i].E_basic - e0) +
                       mu * integrate_series(g, h, static_cast<int>(i));
    worst = std::max(worst, std::abs(lhs) / scale);
  }
  return worst;
}

VectorField auxiliary_u(const StrainState& s, double mu) {
  const VectorField divv = sym_divergence(s.V);
  bool dropped1 = false, dropped2 = false;
  VectorField corr;
  corr.c1 = inv_laplacian(divv.c1, &dropped1);
  corr.c2 = inv_laplacian(divv.c2, &dropped2);
  VectorField out = s.u;
  const double c = 2.0 / mu;
  for (int i = 0; i < out.c1.size(); ++i) {
    out.c1.v[i] += c * corr.c1.v[i];
    out.c2.v[i] += c * corr.c2.v[i];
  }
  return out;
}

BalanceReport u_balance(const std::array<StrainState, 3>& states, double dt, double mu,
                        PressureMode pmode, TransportCoefficient coeff) {
  if (!(dt > 0.0)) throw std::invalid_argument("u_balance: dt must be positive");
  BalanceReport rep;
  rep.dt_used = dt;
  rep.pressure_used = pmode;

  double e_u[3];      // (1/2) |lap U|^2
  double dissip[3];   // mu |grad lap U|^2
  double g_terms[3];  // RHS inner products
  for (int k = 0; k < 3; ++k) {
    const StrainState& s = states[k];
    const SpecU lu = lap_aux_hat(s, mu);
    e_u[k] = 0.5 * h_s_sq(lu, 0);

    dissip[k] = mu * (grad_sobolev_norm_sq_hat(lu.u1, 0) +
                      grad_sobolev_norm_sq_hat(lu.u2, 0));

    // (lap p, div lap U)
    const ScalarField p = recover_pressure(s, pmode, mu);
    const auto lap_p = laplacian_hat(to_spectral(p));
    auto div_lu = derivative_hat(lu.u1, 1);
    {
      auto d2 = derivative_hat(lu.u2, 2);
      for (size_t i = 0; i < div_lu.m.size(); ++i) div_lu.m[i] += d2.m[i];
    }
    const double p_term = inner_hat(lap_p, div_lu);

    // (1/mu)(lap u, lap U)
    const auto lap_u1 = laplacian_hat(to_spectral(s.u.c1));
    const auto lap_u2 = laplacian_hat(to_spectral(s.u.c2));
    const double u_term = (inner_hat(lap_u1, lu.u1) + inner_hat(lap_u2, lu.u2)) / mu;

    // (f, lap U)
    const VectorField f = assemble_f(s, mu, coeff);
    const double f_term =
        inner_hat(to_spectral(f.c1), lu.u1) + inner_hat(to_spectral(f.c2), lu.u2);

    g_terms[k] = p_term + u_term + f_term;
  }

  // Central difference of the energy against Simpson window averages of the
  // dissipation and inner-product terms; the balance is 4th-order in dt.
  const auto simpson = [](const double* a) { return (a[0] + 4.0 * a[1] + a[2]) / 6.0; };
  rep.lhs = (e_u[2] - e_u[0]) / (2.0 * dt) + simpson(dissip);
  rep.rhs = simpson(g_terms);
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

Certificate theorem_certificate(const std::vector<DiagnosticsRecord>& series) {
  Certificate cert;
  if (series.empty()) return cert;
  const double init = series[0].h2_u + series[0].h2_V;
  double sup = 0.0;
  for (const auto& r : series) sup = std::max(sup, r.h2_u + r.h2_V);
  cert.rho_sup = (init > 0.0) ? sup / init : (sup == 0.0 ? 1.0 : INFINITY);

  const auto& last = series.back();
  const double acc = last.acc_gradu_h2 + last.acc_deltaU_h1 + last.acc_divV_h1;
  cert.rho_dis = (init > 0.0) ? acc / init : (acc == 0.0 ? 0.0 : INFINITY);

  const double slack = 1e-10 * std::max(std::abs(series[0].E_basic), 1e-30);
  cert.energy_monotone = true;
  cert.max_energy_uptick = 0.0;
  for (size_t i = 1; i < series.size(); ++i) {
    const double up = series[i].E_basic - series[i - 1].E_basic;
    cert.max_energy_uptick = std::max(cert.max_energy_uptick, up);
    if (up > slack) cert.energy_monotone = false;
  }
  return cert;
}

namespace {

DiagnosticsRecord record_common(const StrainState& s, double t, double mu, Accumulators& acc,
                                const ConstraintResiduals& residuals) {
  DiagnosticsRecord r;
  r.t = t;
  const EnergyPair e = basic_energy(s);
  r.E_basic = e.basic;
  r.E_alt = e.alt;

  const auto u1h = to_spectral(s.u.c1);
  const auto u2h = to_spectral(s.u.c2);
  r.gradu_l2sq = grad_sobolev_norm_sq_hat(u1h, 0) + grad_sobolev_norm_sq_hat(u2h, 0);
  r.h2_u = sobolev_norm_sq_hat(u1h, 2) + sobolev_norm_sq_hat(u2h, 2);
  r.h2_V = sobolev_norm_sq(s.V, 2);

  const SpecU lu = lap_aux_hat(s, mu);
  r.deltaU_l2sq = h_s_sq(lu, 0);
  const double deltaU_h1 = sobolev_norm_sq_hat(lu.u1, 1) + sobolev_norm_sq_hat(lu.u2, 1);
  const double gradu_h2 = grad_sobolev_norm_sq_hat(u1h, 2) + grad_sobolev_norm_sq_hat(u2h, 2);

  const VectorField divv = sym_divergence(s.V);
  const double divv_h1 = sobolev_norm_sq(divv, 1);

  if (acc.primed) {
    const double h = t - acc.last_t;
    acc.acc_gradu_h2 += 0.5 * h * (acc.last_gradu_h2 + gradu_h2);
    acc.acc_deltaU_h1 += 0.5 * h * (acc.last_deltaU_h1 + deltaU_h1);
    acc.acc_divV_h1 += 0.5 * h * (acc.last_divV_h1 + divv_h1);
  }
  acc.primed = true;
  acc.last_t = t;
  acc.last_gradu_h2 = gradu_h2;
  acc.last_deltaU_h1 = deltaU_h1;
  acc.last_divV_h1 = divv_h1;

  r.acc_gradu_h2 = acc.acc_gradu_h2;
  r.acc_deltaU_h1 = acc.acc_deltaU_h1;
  r.acc_divV_h1 = acc.acc_divV_h1;
  r.residuals = residuals;
  return r;
}

}  // namespace

DiagnosticsRecord record(const StrainState& s, double t, double mu, Accumulators& acc) {
  return record_common(s, t, mu, acc, constraint_residuals(s));
}

DiagnosticsRecord record(const RotStrainState& s, double t, double mu, Accumulators& acc) {
  return record_common(StrainState{s.u, s.V}, t, mu, acc, constraint_residuals(s));
}

DiagnosticsRecord record(const OldroydState& s, double t, double mu, Accumulators& acc) {
  // Diagnose through the strain variables of the pointwise decomposition.
  SymTensorField V(s.F.grid());
  for (int i = 0; i < s.F.a11.size(); ++i) {
    const Mat2 f{s.F.a11.v[i], s.F.a12.v[i], s.F.a21.v[i], s.F.a22.v[i]};
    const PolarParts p = polar_decompose_left(f);
    V.a11.v[i] = p.V.a11;
    V.a12.v[i] = p.V.a12;
    V.a22.v[i] = p.V.a22;
  }
  const StrainState sv{s.u, dealias(V)};
  return record_common(sv, t, mu, acc, constraint_residuals(s));
}

}  // namespace visco2d

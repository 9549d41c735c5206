#include "visco2d/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "visco2d/spectral.hpp"

namespace visco2d {

namespace {

FieldPack lincomb(const FieldPack& a, const FieldPack& b, double sb) {
  FieldPack out = a;
  for (size_t c = 0; c < out.comps.size(); ++c)
    for (int i = 0; i < out.comps[c].size(); ++i) out.comps[c].v[i] += sb * b.comps[c].v[i];
  return out;
}

void add_in_place(FieldPack& y, const FieldPack& x, double s) {
  for (size_t c = 0; c < y.comps.size(); ++c)
    for (int i = 0; i < y.comps[c].size(); ++i) y.comps[c].v[i] += s * x.comps[c].v[i];
}

/// Multiplies the velocity components by exp(-(mu |k|^2 + nu4 |k|^4) tau)
/// in Fourier space and re-applies the Leray projection. tau = 0 projects
/// only.
void diffuse_and_project(FieldPack& y, double mu, double nu4, double tau) {
  if (y.n_velocity == 0) return;
  auto h1 = to_spectral(y.comps[0]);
  auto h2 = to_spectral(y.comps[1]);
  if ((mu + nu4) * tau != 0.0) {
    const Grid& g = *y.grid;
    for (int i2 = 0; i2 < g.n(); ++i2) {
      for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
        const double ksq = g.ksq(ih1, i2);
        const double factor = std::exp(-tau * (mu * ksq + nu4 * ksq * ksq));
        h1.at(ih1, i2) *= factor;
        h2.at(ih1, i2) *= factor;
      }
    }
  }
  leray_project_hat(h1, h2);
  y.comps[0] = to_physical(h1);
  y.comps[1] = to_physical(h2);
}

void apply_factor(FieldPack& y, double mu, double nu4, double tau) {
  if (y.n_velocity == 0 || (mu + nu4) * tau == 0.0) return;
  auto h1 = to_spectral(y.comps[0]);
  auto h2 = to_spectral(y.comps[1]);
  const Grid& g = *y.grid;
  for (int i2 = 0; i2 < g.n(); ++i2) {
    for (int ih1 = 0; ih1 < g.nh(); ++ih1) {
      const double ksq = g.ksq(ih1, i2);
      const double factor = std::exp(-tau * (mu * ksq + nu4 * ksq * ksq));
      h1.at(ih1, i2) *= factor;
      h2.at(ih1, i2) *= factor;
    }
  }
  y.comps[0] = to_physical(h1);
  y.comps[1] = to_physical(h2);
}

}  // namespace

void if_rk4_step(FieldPack& y, const PackRhs& rhs, double mu, double h, double nu4) {
  // Lawson integrating factor: w(t) = exp(-L(t-t_n)) y(t) advanced by RK4;
  // L = mu lap - nu4 lap^2 on the velocity block, 0 elsewhere.
  const FieldPack n1 = rhs(y);

  FieldPack ya = lincomb(y, n1, 0.5 * h);
  diffuse_and_project(ya, mu, nu4, 0.5 * h);
  const FieldPack n2 = rhs(ya);

  FieldPack y_half = y;
  apply_factor(y_half, mu, nu4, 0.5 * h);
  FieldPack yb = lincomb(y_half, n2, 0.5 * h);
  diffuse_and_project(yb, 0.0, 0.0, 0.0);
  const FieldPack n3 = rhs(yb);

  FieldPack n3_half = n3;
  apply_factor(n3_half, mu, nu4, 0.5 * h);
  FieldPack y_full = y;
  apply_factor(y_full, mu, nu4, h);
  FieldPack yc = lincomb(y_full, n3_half, h);
  diffuse_and_project(yc, 0.0, 0.0, 0.0);
  const FieldPack n4 = rhs(yc);

  // y_{n+1} = E_h y + h/6 (E_h n1 + 2 E_{h/2} (n2 + n3) + n4)
  FieldPack n1_full = n1;
  apply_factor(n1_full, mu, nu4, h);
  FieldPack n23 = lincomb(n2, n3, 1.0);
  apply_factor(n23, mu, nu4, 0.5 * h);

  y = y_full;
  add_in_place(y, n1_full, h / 6.0);
  add_in_place(y, n23, h / 3.0);
  add_in_place(y, n4, h / 6.0);
  diffuse_and_project(y, 0.0, 0.0, 0.0);
}

void rk4_explicit_step(FieldPack& y, const PackRhs& rhs, double h) {
  const FieldPack n1 = rhs(y);
  FieldPack ya = lincomb(y, n1, 0.5 * h);
  diffuse_and_project(ya, 0.0, 0.0, 0.0);
  const FieldPack n2 = rhs(ya);
  FieldPack yb = lincomb(y, n2, 0.5 * h);
  diffuse_and_project(yb, 0.0, 0.0, 0.0);
  const FieldPack n3 = rhs(yb);
  FieldPack yc = lincomb(y, n3, h);
  diffuse_and_project(yc, 0.0, 0.0, 0.0);
  const FieldPack n4 = rhs(yc);

  add_in_place(y, n1, h / 6.0);
  add_in_place(y, n2, h / 3.0);
  add_in_place(y, n3, h / 3.0);
  add_in_place(y, n4, h / 6.0);
  diffuse_and_project(y, 0.0, 0.0, 0.0);
}

namespace {

template <typename State>
struct PackTraits;

template <>
struct PackTraits<StrainState> {
  static constexpr int n_comps = 5;
  static FieldPack pack(const StrainState& s) {
    FieldPack p;
    p.grid = s.u.grid();
    p.n_velocity = 2;
    p.comps = {s.u.c1, s.u.c2, s.V.a11, s.V.a12, s.V.a22};
    return p;
  }
  static StrainState unpack(const FieldPack& p) {
    StrainState s;
    s.u.c1 = p.comps[0];
    s.u.c2 = p.comps[1];
    s.V.a11 = p.comps[2];
    s.V.a12 = p.comps[3];
    s.V.a22 = p.comps[4];
    return s;
  }
  static FieldPack eval(const FieldPack& p, double mu, bool include_viscous) {
    const StrainState s = unpack(p);
    const StrainRhs r = rhs_strain(s, mu, include_viscous);
    FieldPack out;
    out.grid = p.grid;
    out.n_velocity = 2;
    out.comps = {r.du.c1, r.du.c2, r.dV.a11, r.dV.a12, r.dV.a22};
    return out;
  }
  static const char* comp_name(int c) {
    static const char* names[] = {"u1", "u2", "V11", "V12", "V22"};
    return names[c];
  }
};

template <>
struct PackTraits<RotStrainState> {
  static constexpr int n_comps = 6;
  static FieldPack pack(const RotStrainState& s) {
    FieldPack p;
    p.grid = s.u.grid();
    p.n_velocity = 2;
    p.comps = {s.u.c1, s.u.c2, s.V.a11, s.V.a12, s.V.a22, s.theta};
    return p;
  }
  static RotStrainState unpack(const FieldPack& p) {
    RotStrainState s;
    s.u.c1 = p.comps[0];
    s.u.c2 = p.comps[1];
    s.V.a11 = p.comps[2];
    s.V.a12 = p.comps[3];
    s.V.a22 = p.comps[4];
    s.theta = p.comps[5];
    return s;
  }
  static FieldPack eval(const FieldPack& p, double mu, bool include_viscous) {
    const RotStrainState s = unpack(p);
    const RotStrainRhs r = rhs_rotstrain(s, mu, include_viscous);
    FieldPack out;
    out.grid = p.grid;
    out.n_velocity = 2;
    out.comps = {r.du.c1, r.du.c2, r.dV.a11, r.dV.a12, r.dV.a22, r.dtheta};
    return out;
  }
  static const char* comp_name(int c) {
    static const char* names[] = {"u1", "u2", "V11", "V12", "V22", "theta"};
    return names[c];
  }
};

template <>
struct PackTraits<OldroydState> {
  static constexpr int n_comps = 6;
  static FieldPack pack(const OldroydState& s) {
    FieldPack p;
    p.grid = s.u.grid();
    p.n_velocity = 2;
    p.comps = {s.u.c1, s.u.c2, s.F.a11, s.F.a12, s.F.a21, s.F.a22};
    return p;
  }
  static OldroydState unpack(const FieldPack& p) {
    OldroydState s;
    s.u.c1 = p.comps[0];
    s.u.c2 = p.comps[1];
    s.F.a11 = p.comps[2];
    s.F.a12 = p.comps[3];
    s.F.a21 = p.comps[4];
    s.F.a22 = p.comps[5];
    return s;
  }
  static FieldPack eval(const FieldPack& p, double mu, bool include_viscous) {
    const OldroydState s = unpack(p);
    const OldroydRhs r = rhs_oldroyd(s, mu, include_viscous);
    FieldPack out;
    out.grid = p.grid;
    out.n_velocity = 2;
    out.comps = {r.du.c1, r.du.c2, r.dF.a11, r.dF.a12, r.dF.a21, r.dF.a22};
    return out;
  }
  static const char* comp_name(int c) {
    static const char* names[] = {"u1", "u2", "F11", "F12", "F21", "F22"};
    return names[c];
  }
};

template <typename State>
State step_impl(const State& s, double mu, const SchemeSpec& scheme, double h) {
  using T = PackTraits<State>;
  if (!(h > 0.0)) throw std::invalid_argument("step: h must be positive");
  FieldPack y = T::pack(s);
  if (scheme.kind == SchemeKind::if_rk4) {
    const PackRhs rhs = [mu](const FieldPack& p) { return T::eval(p, mu, false); };
    if_rk4_step(y, rhs, mu, h, scheme.hyperviscosity);
  } else {
    if (scheme.hyperviscosity != 0.0)
      throw std::invalid_argument("hyperviscosity requires the if_rk4 scheme");
    const PackRhs rhs = [mu](const FieldPack& p) { return T::eval(p, mu, true); };
    rk4_explicit_step(y, rhs, h);
  }
  for (size_t c = 0; c < y.comps.size(); ++c)
    if (!all_finite(y.comps[c]))
      throw std::runtime_error(std::string("step: non-finite values in ") +
                               T::comp_name(static_cast<int>(c)));
  return T::unpack(y);
}

double max_speed(const VectorField& u) {
  double m = 0.0;
  for (int i = 0; i < u.c1.size(); ++i) {
    const double s = u.c1.v[i] * u.c1.v[i] + u.c2.v[i] * u.c2.v[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

}  // namespace

OldroydState step(const OldroydState& s, double mu, const SchemeSpec& scheme, double h) {
  return step_impl(s, mu, scheme, h);
}

StrainState step(const StrainState& s, double mu, const SchemeSpec& scheme, double h) {
  return step_impl(s, mu, scheme, h);
}

RotStrainState step(const RotStrainState& s, double mu, const SchemeSpec& scheme, double h) {
  return step_impl(s, mu, scheme, h);
}

double cfl_dt(const VectorField& u, double max_stretch_norm, double cfl_safety, double dt_cap) {
  const double speed = std::max(max_speed(u), max_stretch_norm);
  if (speed <= 1e-14) return dt_cap;
  return std::min(dt_cap, cfl_safety * u.grid()->dx() / speed);
}

double cfl_dt(const StrainState& s, double cfl_safety, double dt_cap) {
  double stretch = 0.0;
  for (int i = 0; i < s.V.a11.size(); ++i) {
    const Mat2 m{1.0 + s.V.a11.v[i], s.V.a12.v[i], s.V.a12.v[i], 1.0 + s.V.a22.v[i]};
    stretch = std::max(stretch, operator_norm(m));
  }
  return cfl_dt(s.u, stretch, cfl_safety, dt_cap);
}

double cfl_dt(const RotStrainState& s, double cfl_safety, double dt_cap) {
  return cfl_dt(StrainState{s.u, s.V}, cfl_safety, dt_cap);
}

double cfl_dt(const OldroydState& s, double cfl_safety, double dt_cap) {
  double stretch = 0.0;
  for (int i = 0; i < s.F.a11.size(); ++i) {
    const Mat2 m{s.F.a11.v[i], s.F.a12.v[i], s.F.a21.v[i], s.F.a22.v[i]};
    stretch = std::max(stretch, operator_norm(m));
  }
  return cfl_dt(s.u, stretch, cfl_safety, dt_cap);
}

}  // namespace visco2d

#include "visco2d/init.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "visco2d/integrator.hpp"
#include "visco2d/spectral.hpp"

namespace visco2d {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

VectorField taylor_green_velocity(const GridPtr& grid, double amplitude) {
  if (amplitude < 0.0) throw std::invalid_argument("taylor_green: amplitude must be >= 0");
  VectorField u(grid);
  const int n = grid->n();
  const double scale = kTwoPi / grid->length();  // fundamental wavenumber
  for (int i2 = 0; i2 < n; ++i2) {
    const double x2 = grid->x2(i2) * scale;
    for (int i1 = 0; i1 < n; ++i1) {
      const double x1 = grid->x1(i1) * scale;
      u.c1.at(i1, i2) = amplitude * std::sin(x1) * std::cos(x2);
      u.c2.at(i1, i2) = -amplitude * std::cos(x1) * std::sin(x2);
    }
  }
  return u;
}

ScalarField warm_stream_function(const GridPtr& grid, const InitRecipe& recipe) {
  ScalarField psi(grid);
  const int n = grid->n();
  const double scale = kTwoPi / grid->length();
  const bool rich = recipe.warm_stream == "rich";
  if (!rich && recipe.warm_stream != "basic")
    throw std::invalid_argument("unknown warm_stream preset: " + recipe.warm_stream);
  const double a = recipe.warm_amp;
  for (int i2 = 0; i2 < n; ++i2) {
    const double x2 = grid->x2(i2) * scale;
    for (int i1 = 0; i1 < n; ++i1) {
      const double x1 = grid->x1(i1) * scale;
      double v = a * std::sin(x1) * std::sin(x2);
      if (rich) {
        v += a * (0.40 * std::sin(2.0 * x1) * std::sin(x2) -
                  0.30 * std::sin(x1) * std::sin(2.0 * x2) +
                  0.20 * std::cos(2.0 * x1) * std::sin(2.0 * x2) +
                  0.15 * std::sin(3.0 * x1) * std::cos(x2));
      }
      psi.at(i1, i2) = v;
    }
  }
  return psi;
}

VectorField perp_gradient(const ScalarField& psi) {
  const auto ph = to_spectral(psi);
  VectorField b;
  b.c1 = to_physical(derivative_hat(ph, 2));
  for (auto& x : b.c1.v) x = -x;  // grad-perp = (-d2, d1)
  b.c2 = to_physical(derivative_hat(ph, 1));
  return b;
}

Tensor2Field warm_start_deformation(const GridPtr& grid, const InitRecipe& recipe, double dt) {
  if (recipe.warm_time < 0.0) throw std::invalid_argument("warm_time must be >= 0");
  Tensor2Field F(grid);
  for (int i = 0; i < F.a11.size(); ++i) {
    F.a11.v[i] = 1.0;
    F.a22.v[i] = 1.0;
  }
  if (recipe.warm_time == 0.0) return F;
  if (!(dt > 0.0)) throw std::invalid_argument("warm start: dt must be positive");

  const VectorField b = perp_gradient(warm_stream_function(grid, recipe));
  const int steps = std::max(1, static_cast<int>(std::ceil(recipe.warm_time / dt - 1e-12)));
  const double h = recipe.warm_time / steps;

  // Frozen transport F_s + b.grad F = grad(b) F, plain RK4 (no diffusion).
  const Tensor2Field gb = velocity_gradient(b);
  const PackRhs rhs = [&b, &gb](const FieldPack& p) {
    OldroydState s;
    s.u = b;
    s.F.a11 = p.comps[0];
    s.F.a12 = p.comps[1];
    s.F.a21 = p.comps[2];
    s.F.a22 = p.comps[3];
    // Reuse the Oldroyd transport with the frozen carrier: dF = -b.grad F + grad(b) F.
    const OldroydRhs r = rhs_oldroyd(s, 0.0, false);
    FieldPack out;
    out.grid = p.grid;
    out.n_velocity = 0;
    out.comps = {r.dF.a11, r.dF.a12, r.dF.a21, r.dF.a22};
    return out;
  };

  FieldPack y;
  y.grid = grid;
  y.n_velocity = 0;
  y.comps = {F.a11, F.a12, F.a21, F.a22};
  for (int k = 0; k < steps; ++k) {
    rk4_explicit_step(y, rhs, h);
    for (const auto& c : y.comps) {
      if (!all_finite(c)) {
        const double cfl = cfl_dt(b, 0.0, 1.0, h);
        throw std::runtime_error(
            "warm start transport unstable at s=" + std::to_string((k + 1) * h) +
            "; CFL-limited step is " + std::to_string(cfl) + " vs dt=" + std::to_string(h));
      }
    }
  }
  F.a11 = y.comps[0];
  F.a12 = y.comps[1];
  F.a21 = y.comps[2];
  F.a22 = y.comps[3];
  return F;
}

ScalarField unwrap_angle(const ScalarField& wrapped) {
  const GridPtr grid = wrapped.grid;
  const int n = grid->n();
  ScalarField out = wrapped;
  std::vector<char> seen(out.size(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  auto relax = [&](int from, int to) {
    if (seen[to]) return;
    const double raw = wrapped.v[to];
    const double jump = std::round((raw - out.v[from]) / kTwoPi);
    out.v[to] = raw - kTwoPi * jump;
    seen[to] = 1;
    frontier.push(to);
  };
  while (!frontier.empty()) {
    const int idx = frontier.front();
    frontier.pop();
    const int i1 = idx % n, i2 = idx / n;
    relax(idx, ((i1 + 1) % n) + i2 * n);
    relax(idx, ((i1 + n - 1) % n) + i2 * n);
    relax(idx, i1 + ((i2 + 1) % n) * n);
    relax(idx, i1 + ((i2 + n - 1) % n) * n);
  }
  // Consistency across every torus edge: a jump of ~2pi that survived the
  // sweep means nonzero winding (topological obstruction).
  double max_jump = 0.0;
  for (int i2 = 0; i2 < n; ++i2) {
    for (int i1 = 0; i1 < n; ++i1) {
      const double here = out.at(i1, i2);
      max_jump = std::max(max_jump, std::abs(out.at((i1 + 1) % n, i2) - here));
      max_jump = std::max(max_jump, std::abs(out.at(i1, (i2 + 1) % n) - here));
    }
  }
  if (max_jump > 3.0)
    throw std::runtime_error(
        "angle unwrap failed: inconsistent 2pi jumps across the torus (max edge jump " +
        std::to_string(max_jump) + ")");
  return out;
}

MatchedStates states_from_deformation(const VectorField& u0, const Tensor2Field& F0) {
  require_finite(u0, "init.u0");
  require_finite(F0, "init.F0");
  const GridPtr grid = u0.grid();

  SymTensorField V(grid);
  ScalarField theta_raw(grid);
  for (int i = 0; i < F0.a11.size(); ++i) {
    const Mat2 f{F0.a11.v[i], F0.a12.v[i], F0.a21.v[i], F0.a22.v[i]};
    const PolarParts p = polar_decompose_left(f);
    V.a11.v[i] = p.V.a11;
    V.a12.v[i] = p.V.a12;
    V.a22.v[i] = p.V.a22;
    theta_raw.v[i] = p.theta;
  }
  const ScalarField theta = dealias(unwrap_angle(theta_raw));

  MatchedStates out;
  out.oldroyd.u = dealias(u0);
  out.oldroyd.F = dealias(F0);
  out.strain.u = out.oldroyd.u;
  out.strain.V = dealias(V);
  out.rotstrain.u = out.oldroyd.u;
  out.rotstrain.V = out.strain.V;
  out.rotstrain.theta = theta;
  out.residuals = constraint_residuals(out.rotstrain);
  return out;
}

MatchedStates build_initial_states(const GridPtr& grid, const InitRecipe& recipe, double dt) {
  VectorField u0(grid);
  Tensor2Field F0(grid);
  switch (recipe.kind) {
    case InitKind::trivial:
      for (int i = 0; i < F0.a11.size(); ++i) {
        F0.a11.v[i] = 1.0;
        F0.a22.v[i] = 1.0;
      }
      break;
    case InitKind::taylor_green:
      u0 = taylor_green_velocity(grid, recipe.amplitude);
      for (int i = 0; i < F0.a11.size(); ++i) {
        F0.a11.v[i] = 1.0;
        F0.a22.v[i] = 1.0;
      }
      break;
    case InitKind::warm_start:
      u0 = taylor_green_velocity(grid, recipe.amplitude);
      F0 = warm_start_deformation(grid, recipe, dt);
      break;
  }
  return states_from_deformation(u0, F0);
}

}  // namespace visco2d

#pragma once

#include <array>
#include <vector>

#include "visco2d/models.hpp"

namespace visco2d {

/// One time-sample of energies, norms, identity residuals and the running
/// dissipation integrals.
struct DiagnosticsRecord {
  double t = 0.0;
  double E_basic = 0.0;      // integral of |u|^2 + |V|^2 + 2 tr V
  double E_alt = 0.0;        // integral of |u|^2 + (V11-V22)^2 + (V12+V21)^2
  double gradu_l2sq = 0.0;   // |grad u|_{L2}^2
  double h2_u = 0.0;         // |u|_{H2}^2
  double h2_V = 0.0;         // |V|_{H2}^2 (Frobenius)
  double deltaU_l2sq = 0.0;  // |lap U|_{L2}^2
  ConstraintResiduals residuals;
  double acc_gradu_h2 = 0.0;   // int_0^t |grad u|_{H2}^2
  double acc_deltaU_h1 = 0.0;  // int_0^t |lap U|_{H1}^2
  double acc_divV_h1 = 0.0;    // int_0^t |div V|_{H1}^2
};

struct EnergyPair {
  double basic = 0.0;
  double alt = 0.0;
};

/// Both quadrature values of the basic energy; they agree exactly when
/// tr V = -det V pointwise, so their gap monitors the constraint.
EnergyPair basic_energy(const StrainState& s);
EnergyPair basic_energy(const RotStrainState& s);

/// max_t |(E(t) - E(0))/2 + mu * int_0^t |grad u|^2 ds| / E(0) over the
/// series, with the time integral evaluated by 4th-order composite
/// quadrature on the (uniform) record grid.
double energy_law_residual(const std::vector<DiagnosticsRecord>& series, double mu);

/// U = u + 2 mu^-1 lap^-1 div V (the k=0 mode of lap^-1 input is dropped).
VectorField auxiliary_u(const StrainState& s, double mu);

struct BalanceReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs|
  double dt_used = 0.0;
  PressureMode pressure_used = PressureMode::projection;
};

/// Balance of the lap(U) evolution over a uniform three-state window
/// centred at states[1]: d/dt (1/2)|lap U|^2 by central difference, the
/// dissipation and inner-product terms averaged with Simpson weights so the
/// residual converges at the scheme order. Independent of integrator staging.
BalanceReport u_balance(const std::array<StrainState, 3>& states, double dt, double mu,
                        PressureMode pmode = PressureMode::projection,
                        TransportCoefficient coeff = TransportCoefficient::derived);

struct Certificate {
  double rho_sup = 0.0;     // sup_t (h2_u + h2_V) / initial value
  double rho_dis = 0.0;     // accumulated dissipation integrals / initial value
  bool energy_monotone = true;
  double max_energy_uptick = 0.0;  // worst E_basic increase between records
};

/// Boundedness/dissipation certificate for a completed run. No sharp
/// theoretical constant is available, so callers compare rho_sup against a
/// project-chosen bound.
Certificate theorem_certificate(const std::vector<DiagnosticsRecord>& series);

/// Running trapezoid accumulators for the dissipation integrals.
struct Accumulators {
  double acc_gradu_h2 = 0.0;
  double acc_deltaU_h1 = 0.0;
  double acc_divV_h1 = 0.0;
  double last_t = 0.0;
  double last_gradu_h2 = 0.0;
  double last_deltaU_h1 = 0.0;
  double last_divV_h1 = 0.0;
  bool primed = false;
};

DiagnosticsRecord record(const RotStrainState& s, double t, double mu, Accumulators& acc);
DiagnosticsRecord record(const StrainState& s, double t, double mu, Accumulators& acc);
DiagnosticsRecord record(const OldroydState& s, double t, double mu, Accumulators& acc);

/// 4th-order composite quadrature (Simpson with a 3/8 tail) of uniformly
/// sampled values; falls back to trapezoid for fewer than three samples.
double integrate_series(const std::vector<double>& values, double h, int upto /* inclusive */);

}  // namespace visco2d

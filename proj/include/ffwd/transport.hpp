#pragma once

// Probability transport while the barrier is fast-forwarded: adiabatic and
// drive-induced currents, time-dependent transmission / reflection and the
// deviation of their sum from one.

#include <vector>

#include "ffwd/drive.hpp"
#include "ffwd/regularize.hpp"
#include "ffwd/schedule.hpp"

namespace ffwd {

struct CurrentComponents {
  double j_ad = 0.0;   // (hbar/m) rho deta/dx
  double j_nad = 0.0;  // -v int_c^x d rho/dR
  double total() const { return j_ad + j_nad; }
};

/// Current components at grid node x. The state must be regularized at
/// R_of_t(sched, t).
CurrentComponents current_decomposition(const RegularizedState& st, const FFSchedule& sched, double t, double x);

struct TransportCoefficients {
  double T_ff = 0.0;
  double R_ff = 0.0;
};

/// T_ff = T - (m/hbar k) v J(x2), R_ff = R + (m/hbar k) v J(x1), with the
/// stationary T, R of the state and J from the base point of the fields.
TransportCoefficients transport_coefficients(const RegularizedState& st, const FFSchedule& sched, double t,
                                             const BarrierGeometry& geo);

/// -(m/hbar k) v int_{x1}^{x2} d rho/dR, integrated directly between x1 and x2.
double unitarity_deviation(const RegularizedState& st, const FFSchedule& sched, double t, const BarrierGeometry& geo);

struct ContinuityCheck {
  double lhs = 0.0;  // j_FF(x2) - j_FF(x1) from current_decomposition
  double rhs = 0.0;  // -v d/dR int_{x1}^{x2} rho, from separate parameter solves
  double residual() const;
};

/// Both sides of the interval continuity balance. The right side integrates
/// the density first and differentiates the integral in R afterwards
/// (5-point stencil, step `step`), so it shares no derivative data with st.
ContinuityCheck continuity_check(const StationaryFamily& family, const RegularizedState& st, const FFSchedule& sched,
                                 double t, double step = 1e-4);

struct TransportTrace {
  double k = 0.0;
  std::vector<double> times;
  std::vector<double> R;
  std::vector<double> T_ff;
  std::vector<double> R_ff;
  std::vector<double> delta_u;
  std::vector<double> T_adiabatic;
  std::vector<double> R_adiabatic;
  std::vector<double> j_ad_x1, j_ad_x2, j_nad_x1, j_nad_x2;
  std::vector<double> continuity_residual;
};

/// Evaluates the transport quantities at every requested time.
TransportTrace transport_trace(const StationaryFamily& family, const FFSchedule& sched, const std::vector<double>& times,
                               double c = 0.0, JetSteps steps = {});

/// n + 1 equally spaced times on [0, T_FF].
std::vector<double> uniform_times(const FFSchedule& sched, int n);

}  // namespace ffwd

#pragma once

// Independent check that the fast-forwarded state solves the driven
// Schroedinger equation: discrete residuals of the analytic state and a
// Crank-Nicolson propagation compared against it.

#include <vector>

#include "ffwd/grid.hpp"
#include "ffwd/potentials.hpp"
#include "ffwd/schedule.hpp"
#include "ffwd/stationary.hpp"

namespace ffwd {

enum class Boundary { PinnedAnalytic };

struct PropagatorConfig {
  double x_min = -1.5;
  double x_max = 1.5;
  Index nx = 3001;
  double dt = 0.01;
  double t_end = -1.0;  // negative: T_FF of the schedule
  int record_every = 10;
  double c = 0.0;
  Boundary boundary = Boundary::PinnedAnalytic;

  /// Window and time step for residual evaluation. Wider spacing keeps the
  /// rounding floor of the 4th-order Laplacian near 1e-11.
  static PropagatorConfig residual_default();

  Grid grid() const;
  /// Both the spatial and the temporal resolution multiplied by `factor`.
  PropagatorConfig refined(int factor) const;
};

/// Phase-stripped fast-forward state psi_MN e^{iEt} = phi0 e^{i v theta}
/// on the family grid.
ComplexField analytic_state(const StationaryFamily& family, const FFSchedule& sched, double t, double c = 0.0);

/// max |i hbar d_t psi - H psi| over interior nodes for psi = psi_MN and
/// H = -hbar^2/2m d_x^2 + V0 + V_MN, with the energy phase removed.
/// Time: central 2nd order, forward 3-point at t = 0 and for t >= T_FF
/// (the state is stationary from T_FF on). Space: 4th order.
/// Double-delta models are rejected with DomainError.
double pde_residual(const BarrierModel& model, double k, const FFSchedule& sched, double t,
                    const PropagatorConfig& config = PropagatorConfig::residual_default());

/// max |-hbar^2/2m phi0'' + (V0 - E) phi0| over interior nodes.
double stationary_residual(const BarrierModel& model, double k, double r,
                           const PropagatorConfig& config = PropagatorConfig::residual_default());

struct ResidualConvergence {
  std::vector<double> residuals;  // one per refinement level
  std::vector<double> orders;     // log2 ratio of successive levels
};
/// Residual at `levels` resolutions, each doubling the previous one.
ResidualConvergence residual_convergence(const BarrierModel& model, double k, const FFSchedule& sched, double t,
                                         int levels = 3,
                                         const PropagatorConfig& base = PropagatorConfig::residual_default());

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> fidelity;  // windowed over [x1, x2]
  std::vector<double> residual;  // pde_residual at the recorded times (empty unless requested)
  std::vector<double> mass;      // int_{x1}^{x2} |psi_num|^2
  std::vector<double> j_x1;      // current of the numerical state at x1
  std::vector<double> j_x2;
  double min_fidelity = 1.0;
  double final_target_fidelity = 1.0;  // against phi0(R_final) at t_end
  double max_balance_error = 0.0;      // discrete continuity over [x1, x2], every step
  double max_relative_error = 0.0;     // max over records of |psi_num - psi| / |psi| on [x1, x2]
};

/// Crank-Nicolson propagation of the phase-stripped MN-gauge equation with
/// midpoint Hamiltonian and 2nd-order Laplacian. Dirichlet values at both
/// ends follow the analytic state. Throws StabilityError on NaN or when the
/// windowed norm drifts by more than 10% from the analytic one.
FidelityTrace propagate(const BarrierModel& model, double k, const FFSchedule& sched,
                        const PropagatorConfig& config = {}, bool with_residual = false);

/// |<a|b>| / (|a||b|) over nodes [i0, i1] with Simpson weights.
double windowed_fidelity(const ComplexField& a, const ComplexField& b, const Grid& grid, Index i0, Index i1);

}  // namespace ffwd

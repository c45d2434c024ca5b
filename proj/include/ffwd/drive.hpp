#pragma once

// Driving fields that fast-forward the adiabatic control of a scattering
// state: vector potential, scalar potential and electric field in the
// minimal-coupling gauge, and the vector-potential-free gauge variant.
// Units q = c = 1.

#include <vector>

#include "ffwd/grid.hpp"
#include "ffwd/potentials.hpp"
#include "ffwd/regularize.hpp"
#include "ffwd/schedule.hpp"

namespace ffwd {

enum class Gauge { MinimalCoupling, MNGauge };

struct DrivePotentials {
  RealField a_ff;  // -hbar v dtheta/dx
  RealField v_ff;
};

/// Pointwise potentials at time t. The state must be regularized at
/// R = R_of_t(sched, t); throws DomainError otherwise.
DrivePotentials drive_potentials(const RegularizedState& st, const FFSchedule& sched, double t);

/// E = -dA/dt - dV/dx on the grid. dA/dt by the chain rule with dR/dt = v,
/// dV/dx by 4th-order differences. At double-delta supports the value is
/// the right-sided limit and carries no physical meaning.
RealField electric_field(const RegularizedState& st, const FFSchedule& sched, double t);
/// Same at the grid node x. Throws StepSizeError off-grid, DomainError at
/// a delta support.
double electric_field(const RegularizedState& st, const FFSchedule& sched, double t, double x);

/// The five terms of the expanded electric field, with the printed
/// coefficients:
///   rate       hbar vdot dtheta/dx
///   parameter  hbar v^2 d/dR dtheta/dx
///   cross      (hbar^2/2m) v d/dx(dtheta/dx deta/dx)
///   quadratic  (hbar^2/2m) v^2 d/dx (dtheta/dx)^2
///   phase      hbar v d/dR deta/dx
/// Differentiating V_FF gives the cross term twice the printed weight;
/// derived_sum() uses that weight, printed_sum() the literal one.
struct ElectricFieldTerms {
  RealField rate, parameter, cross, quadratic, phase;
  RealField printed_sum() const { return rate + parameter + cross + quadratic + phase; }
  RealField derived_sum() const { return rate + parameter + 2.0 * cross + quadratic + phase; }
};
ElectricFieldTerms electric_field_terms(const RegularizedState& st, const FFSchedule& sched, double t);

/// Vector-potential-free state and potential: psi = phi0 e^{i v theta} e^{-iEt},
/// V_MN = V_FF - hbar vdot theta - hbar v^2 dtheta/dR.
struct MNGaugeState {
  ComplexField psi;
  RealField v_ff;
};
MNGaugeState gauge_transform_mn(const RegularizedState& st, const FFSchedule& sched, double t);

/// psi_MN for given v and t (no schedule consistency check).
ComplexField mn_wavefunction(const RegularizedState& st, double v, double t);

/// Probability current Re[psi* (hbar/im) dpsi/dx] of the gauge-free state at
/// grid node x, from 4th-order differences of psi_MN.
double mn_current(const RegularizedState& st, const FFSchedule& sched, double t, double x);

struct ModulatedCoefficients {
  Complex t_r_ff{};
  Complex r_f_ff{};
};
/// t_r e^{i v theta(x2)}, r_f e^{i v theta(x1)}.
ModulatedCoefficients modulated_coefficients(const RegularizedState& st, const FFSchedule& sched, double t,
                                             const BarrierGeometry& geo);

/// SI field strength (V/m) for a laser wavelength in metres.
double si_field(double e_ff, double wavelength);

/// Fields on a (t, x) lattice; rows are times.
struct DriveFieldSet {
  Grid grid;
  std::vector<double> times;
  Eigen::MatrixXd a_ff;
  Eigen::MatrixXd v_ff;
  Eigen::MatrixXd e_ff;
  Gauge gauge = Gauge::MinimalCoupling;

  /// Largest |E| over nodes with |x| <= x_abs, excluding delta supports.
  double max_abs_field(double x_abs) const;
};

DriveFieldSet drive_field_lattice(const StationaryFamily& family, const FFSchedule& sched,
                                  const std::vector<double>& times, double c = 0.0, JetSteps steps = {});

}  // namespace ffwd

#pragma once

// Stationary scattering states phi0(x; k, R) for a particle of unit incident
// amplitude arriving from the left, their amplitude/phase split, and the
// complex transmission / reflection coefficients.

#include <functional>

#include "ffwd/grid.hpp"
#include "ffwd/potentials.hpp"

namespace ffwd {

struct ScatteringSolution {
  double k = 0.0;       // incident wavenumber
  double kprime = 0.0;  // transmitted wavenumber
  double energy = 0.0;  // hbar^2 k^2 / 2m
  double R = 0.0;       // adiabatic parameter
  Grid grid;
  ComplexField phi0;
  RealField phibar;  // |phi0|, strictly positive
  RealField eta;     // continuous phase, phi0 = phibar * exp(i eta)
  Complex t_r{};
  Complex r_f{};

  /// Fills phibar and eta from phi0.
  void split_amplitude_phase();
};

struct TransportProbabilities {
  double T = 0.0;
  double R = 0.0;
};

/// Closed-form Eckart state on `grid` via 2F1 with argument 1/(1 + e^{x/l}).
/// Throws ThresholdError for k <= 1, RangeError for A <= -1.
ScatteringSolution solve_eckart(double k, double A, double l, const Grid& grid);

/// Printed cosh / cos transmission formula, split at A l^2 = 1/4.
double eckart_transmission_closed(double k, double A, double l);

struct EckartCoefficients {
  Complex t_r{};
  Complex r_f{};
  double kprime = 0.0;
};
/// Gamma-ratio coefficients; r_f comes from the z -> 1-z connection formula.
EckartCoefficients eckart_coefficients(double k, double A, double l);

/// Least-squares fit of phi0 to e^{ikx} + r e^{-ikx} over [x_lo, x_hi].
struct ReflectionFit {
  Complex r_f{};
  double rms_residual = 0.0;
};
ReflectionFit fit_reflection(const ScatteringSolution& sol, double x_lo, double x_hi);

struct DoubleDeltaCoefficients {
  Complex delta{};  // Delta(k)
  Complex t_r{};
  Complex r_f{};
  Complex A{};      // e^{ikx} amplitude between the barriers
  Complex B{};      // e^{-ikx} amplitude between the barriers
};
/// Matching-condition algebra for strengths (h_min + Gamma, h_max - Gamma).
DoubleDeltaCoefficients double_delta_coefficients(double k, double gamma, double a, double h_min, double h_max);

/// Piecewise plane-wave state. Throws RangeError when Gamma lies outside
/// [0, h_max - h_min], ThresholdError for k <= 0.
ScatteringSolution solve_double_delta(double k, double gamma, double a, double h_min, double h_max,
                                      const Grid& grid);

/// Independent check of the closed forms: fixed-step RK4 integration of the
/// stationary equation from the right end of `grid` (pure outgoing wave)
/// to the left end, delta barriers applied as exact derivative jumps, then
/// matching to e^{ikx} + r_f e^{-ikx}. The grid must extend into the region
/// where the potential has saturated. Throws StepSizeError when
/// step * (local wavenumber) exceeds 0.05, or step > l/10 for Eckart.
ScatteringSolution numeric_scattering_oracle(const BarrierModel& model, double k, double R, const Grid& grid);

/// T = (k'/k)|t_r|^2, R = |r_f|^2.
TransportProbabilities stationary_transport(const ScatteringSolution& sol);

/// phi0(x; R) at fixed k on a fixed grid, as a function of R. Wraps the
/// closed forms for the built-in barriers; custom families are used for
/// reference densities such as the scale-invariant bound state.
class StationaryFamily {
 public:
  using PhiFunction = std::function<ComplexField(double)>;

  /// Throws ThresholdError when k does not propagate for `model`.
  StationaryFamily(BarrierModel model, double k, Grid grid);

  static StationaryFamily custom(Grid grid, double k, PhiFunction phi, ParameterRange analytic);

  const BarrierModel& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  double k() const { return k_; }
  double kprime() const { return kprime_; }
  double energy() const;
  ParameterRange analytic() const { return analytic_; }
  BarrierGeometry geometry() const { return barrier_geometry(model_); }

  /// Full solution at R (R inside analytic()).
  ScatteringSolution solve(double r) const;
  /// Grid values only.
  ComplexField phi(double r) const;
  /// Closed-form stationary probabilities at R.
  TransportProbabilities transport(double r) const;

 private:
  StationaryFamily() = default;

  BarrierModel model_ = BarrierModel::free();
  double k_ = 0.0;
  double kprime_ = 0.0;
  Grid grid_;
  ParameterRange analytic_;
  PhiFunction custom_;
};

}  // namespace ffwd

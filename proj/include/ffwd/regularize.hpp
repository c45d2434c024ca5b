#pragma once

// Regularization fields of a parametric family of stationary states:
// the phase theta(x; R) and the potential correction Vtilde(x; R) that make
// phi0(x; R(t)) a solution of the time-dependent equation to first order in
// the parameter velocity.

#include "ffwd/grid.hpp"
#include "ffwd/stationary.hpp"

namespace ffwd {

/// Steps of the 5-point parameter stencils. The first derivative uses
/// R +- h, R +- 2h with h = `first`; second derivatives use `second`.
/// Below 1e-4 the first derivative is dominated by rounding noise.
struct JetSteps {
  double first = 1e-4;
  double second = 1e-3;
};

/// phi0 and its first two R-derivatives on the family grid.
struct ParameterJet {
  ScatteringSolution sol;
  ComplexField dphi_dR;
  ComplexField d2phi_dR2;
  bool one_sided = false;  // stencil hit the edge of the analytic range
};

/// Evaluates the family at up to 9 parameter values. Falls back to
/// one-sided 2nd-order differences when a central stencil would leave
/// family.analytic().
ParameterJet parameter_jet(const StationaryFamily& family, double r, JetSteps steps = {});

struct DensityDerivative {
  RealField values;
  bool one_sided = false;
};

/// d|phi0|^2/dR by Richardson-extrapolated central differences of the
/// density itself (steps h and 2h).
DensityDerivative d_dR_density(const StationaryFamily& family, double r, double step = 1e-4);

struct RegularizedFields {
  Grid grid;
  double k = 0.0;
  double R = 0.0;
  double c = 0.0;      // base point, theta(c) = 0
  Index c_index = 0;
  RealField density;       // phibar^2
  RealField d_density_dR;
  RealField J;             // int_c^x d_density_dR
  RealField dtheta_dx;     // -(m/hbar) J / density
  RealField theta;         // int_c^x dtheta_dx
  RealField vtilde;        // -d_eta_dR - (hbar/m) d_eta_dx dtheta_dx; empty until set
};

/// Integrates the defining equation d/dx(rho dtheta/dx) = -(m/hbar) d rho/dR
/// from the base point c (which must be a grid node). Throws NodeError when
/// the amplitude drops below 1e-13.
RegularizedFields theta_fields(const Grid& grid, const RealField& density, const RealField& d_density_dR, double c);
RegularizedFields theta_fields(const ScatteringSolution& sol, const RealField& d_density_dR, double c);

/// Vtilde / hbar on the grid from the phase derivatives.
RealField vtilde(const RealField& d_eta_dx, const RealField& d_eta_dR, const RegularizedFields& fields);
RealField vtilde(const ScatteringSolution& sol, const RealField& d_eta_dR, const RegularizedFields& fields);

/// Everything the drive and transport layers need at one parameter value.
struct RegularizedState {
  ScatteringSolution sol;
  RegularizedFields fields;  // vtilde filled
  RealField d_eta_dx;
  RealField d_eta_dR;
  RealField d2_density_dR2;
  RealField d_dtheta_dx_dR;  // d/dR of dtheta/dx
  RealField dtheta_dR;       // int_c^x d_dtheta_dx_dR
  bool one_sided = false;
};

RegularizedState regularize(const StationaryFamily& family, double r, double c = 0.0, JetSteps steps = {});

/// int_c^x d rho/dGamma for the double-delta state with c = 0, from the
/// closed-form antiderivative of the piecewise density. The Gamma
/// derivative is a 5-point difference with step `step`.
double double_delta_J(double x, double gamma, double k, double a, double h_min, double h_max, double step = 1e-5);

/// int_0^x |phi0|^2 for the double-delta state, closed form.
double double_delta_density_integral(double x, double gamma, double k, double a, double h_min, double h_max);

}  // namespace ffwd

#include "ffwd/regularize.hpp"

#include <array>
#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

constexpr double kAmplitudeFloor = 1e-13;
constexpr Complex kI{0.0, 1.0};

// Samples f(r + j*h) for the offsets in `js`.
template <std::size_t N>
std::array<ComplexField, N> sample(const StationaryFamily& family, double r, double h, const std::array<int, N>& js) {
  std::array<ComplexField, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = family.phi(r + js[i] * h);
  return out;
}

bool central_fits(const StationaryFamily& family, double r, double h) {
  const ParameterRange range = family.analytic();
  return range.contains(r - 2.0 * h) && range.contains(r + 2.0 * h);
}

// +1 for a forward one-sided stencil, -1 for backward.
int one_sided_direction(const StationaryFamily& family, double r, double h) {
  const ParameterRange range = family.analytic();
  if (range.contains(r + 3.0 * h)) return +1;
  if (range.contains(r - 3.0 * h)) return -1;
  throw RangeError("parameter stencil does not fit inside the analytic range at R = " + std::to_string(r));
}

RealField density_of(const ComplexField& phi) { return phi.cwiseAbs2(); }

}  // namespace

ParameterJet parameter_jet(const StationaryFamily& family, double r, JetSteps steps) {
  ParameterJet jet;
  jet.sol = family.solve(r);
  const ComplexField& f0 = jet.sol.phi0;

  const double h1 = steps.first;
  if (central_fits(family, r, h1)) {
    const auto s = sample<4>(family, r, h1, {-2, -1, 1, 2});
    jet.dphi_dR = numerics::five_point_first<ComplexField>(s[0], s[1], s[2], s[3], h1);
  } else {
    const int dir = one_sided_direction(family, r, h1);
    const auto s = sample<2>(family, r, dir * h1, {1, 2});
    jet.dphi_dR = (4.0 * (s[0] - f0) - (s[1] - f0)) / (2.0 * dir * h1);
    jet.one_sided = true;
  }

  const double h2 = steps.second;
  if (central_fits(family, r, h2)) {
    const auto s = sample<4>(family, r, h2, {-2, -1, 1, 2});
    jet.d2phi_dR2 = numerics::five_point_second<ComplexField>(s[0], s[1], f0, s[2], s[3], h2);
  } else {
    const int dir = one_sided_direction(family, r, h2);
    const auto s = sample<3>(family, r, dir * h2, {1, 2, 3});
    jet.d2phi_dR2 = (-5.0 * (s[0] - f0) + 4.0 * (s[1] - f0) - (s[2] - f0)) / (h2 * h2);
    jet.one_sided = true;
  }
  return jet;
}

DensityDerivative d_dR_density(const StationaryFamily& family, double r, double step) {
  DensityDerivative out;
  if (central_fits(family, r, step)) {
    const RealField m2 = density_of(family.phi(r - 2.0 * step));
    const RealField m1 = density_of(family.phi(r - step));
    const RealField p1 = density_of(family.phi(r + step));
    const RealField p2 = density_of(family.phi(r + 2.0 * step));
    out.values = numerics::five_point_first<RealField>(m2, m1, p1, p2, step);
    return out;
  }
  const int dir = one_sided_direction(family, r, step);
  const RealField f0 = density_of(family.phi(r));
  const RealField f1 = density_of(family.phi(r + dir * step));
  const RealField f2 = density_of(family.phi(r + 2.0 * dir * step));
  out.values = (4.0 * (f1 - f0) - (f2 - f0)) / (2.0 * dir * step);
  out.one_sided = true;
  return out;
}

RegularizedFields theta_fields(const Grid& grid, const RealField& density, const RealField& d_density_dR, double c) {
  const double floor = kAmplitudeFloor * kAmplitudeFloor;
  for (Index i = 0; i < density.size(); ++i)
    if (!(density(i) > floor))
      throw NodeError("theta_fields: amplitude vanishes at x = " + std::to_string(grid.x(i)));
  RegularizedFields f;
  f.grid = grid;
  f.c = c;
  f.c_index = grid.node(c);
  f.density = density;
  f.d_density_dR = d_density_dR;
  f.J = numerics::cumulative_integral(d_density_dR, grid, f.c_index);
  f.dtheta_dx = -units::m_over_hbar * f.J.cwiseQuotient(density);
  f.theta = numerics::cumulative_integral(f.dtheta_dx, grid, f.c_index);
  return f;
}

RegularizedFields theta_fields(const ScatteringSolution& sol, const RealField& d_density_dR, double c) {
  RegularizedFields f = theta_fields(sol.grid, sol.phibar.cwiseAbs2(), d_density_dR, c);
  f.k = sol.k;
  f.R = sol.R;
  return f;
}

RealField vtilde(const RealField& d_eta_dx, const RealField& d_eta_dR, const RegularizedFields& fields) {
  return -d_eta_dR - units::hbar_over_m * d_eta_dx.cwiseProduct(fields.dtheta_dx);
}

RealField vtilde(const ScatteringSolution& sol, const RealField& d_eta_dR, const RegularizedFields& fields) {
  return vtilde(numerics::derivative(sol.eta, sol.grid), d_eta_dR, fields);
}

RegularizedState regularize(const StationaryFamily& family, double r, double c, JetSteps steps) {
  ParameterJet jet = parameter_jet(family, r, steps);
  RegularizedState st;
  st.one_sided = jet.one_sided;
  st.sol = std::move(jet.sol);
  const ComplexField& phi = st.sol.phi0;
  const Grid& grid = st.sol.grid;

  const RealField d_rho = 2.0 * (phi.conjugate().cwiseProduct(jet.dphi_dR)).real();
  st.d2_density_dR2 =
      2.0 * (phi.conjugate().cwiseProduct(jet.d2phi_dR2)).real() + 2.0 * jet.dphi_dR.cwiseAbs2();
  st.d_eta_dR = jet.dphi_dR.cwiseQuotient(phi).imag();
  st.d_eta_dx = numerics::derivative(st.sol.eta, grid);

  st.fields = theta_fields(st.sol, d_rho, c);
  st.fields.vtilde = vtilde(st.d_eta_dx, st.d_eta_dR, st.fields);

  const RegularizedFields& f = st.fields;
  const RealField K = numerics::cumulative_integral(st.d2_density_dR2, grid, f.c_index);
  st.d_dtheta_dx_dR = units::m_over_hbar *
                      (-K + f.J.cwiseProduct(d_rho).cwiseQuotient(f.density)).cwiseQuotient(f.density);
  st.dtheta_dR = numerics::cumulative_integral(st.d_dtheta_dx_dR, grid, f.c_index);
  return st;
}

double double_delta_density_integral(double x, double gamma, double k, double a, double h_min, double h_max) {
  const DoubleDeltaCoefficients co = double_delta_coefficients(k, gamma, a, h_min, h_max);
  // int_0^x |A e^{ikx} + B e^{-ikx}|^2
  auto central = [&](double y) {
    const Complex cross = co.A * std::conj(co.B);
    return (std::norm(co.A) + std::norm(co.B)) * y + (cross * (std::exp(2.0 * kI * k * y) - 1.0) / (kI * k)).real();
  };
  if (x < -a) {
    // int_{-a}^x |e^{ikx} + r e^{-ikx}|^2
    const double left = (1.0 + std::norm(co.r_f)) * (x + a) +
                        (co.r_f * (std::exp(-2.0 * kI * k * x) - std::exp(2.0 * kI * k * a)) / (-kI * k)).real();
    return central(-a) + left;
  }
  if (x > a) return central(a) + std::norm(co.t_r) * (x - a);
  return central(x);
}

double double_delta_J(double x, double gamma, double k, double a, double h_min, double h_max, double step) {
  BarrierModel::double_delta(a, h_min, h_max).require_admitted(gamma);
  if (!(k > 0)) throw ThresholdError("double_delta_J: k must be positive");
  auto I = [&](double g) { return double_delta_density_integral(x, g, k, a, h_min, h_max); };
  return numerics::five_point_first(I(gamma - 2.0 * step), I(gamma - step), I(gamma + step), I(gamma + 2.0 * step),
                                    step);
}

}  // namespace ffwd

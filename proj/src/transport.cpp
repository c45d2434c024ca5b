#include "ffwd/transport.hpp"

#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

void require_consistent(const RegularizedState& st, const FFSchedule& sched, double t) {
  const double r = R_of_t(sched, t);
  if (std::abs(r - st.sol.R) > 1e-9 * std::max(1.0, std::abs(r)))
    throw DomainError("state regularized at R = " + std::to_string(st.sol.R) + " but the schedule gives R(t) = " +
                      std::to_string(r));
}

// m / (hbar k): inverse of the incident current of a unit-amplitude wave.
double inverse_incident_current(const RegularizedState& st) { return units::m_over_hbar / st.sol.k; }

}  // namespace

CurrentComponents current_decomposition(const RegularizedState& st, const FFSchedule& sched, double t, double x) {
  require_consistent(st, sched, t);
  const Index i = st.sol.grid.node(x);
  const double v = v_of_t(sched, t);
  return {units::hbar_over_m * st.fields.density(i) * st.d_eta_dx(i), -v * st.fields.J(i)};
}

TransportCoefficients transport_coefficients(const RegularizedState& st, const FFSchedule& sched, double t,
                                             const BarrierGeometry& geo) {
  require_consistent(st, sched, t);
  const Grid& g = st.sol.grid;
  const double v = v_of_t(sched, t);
  const double s = inverse_incident_current(st);
  const TransportProbabilities p = stationary_transport(st.sol);
  return {p.T - s * v * st.fields.J(g.node(geo.x2)), p.R + s * v * st.fields.J(g.node(geo.x1))};
}

double unitarity_deviation(const RegularizedState& st, const FFSchedule& sched, double t, const BarrierGeometry& geo) {
  require_consistent(st, sched, t);
  const Grid& g = st.sol.grid;
  const double v = v_of_t(sched, t);
  if (v == 0.0) return 0.0;
  const double integral = numerics::integrate(st.fields.d_density_dR, g, g.node(geo.x1), g.node(geo.x2));
  return -inverse_incident_current(st) * v * integral;
}

double ContinuityCheck::residual() const { return std::abs(lhs - rhs); }

ContinuityCheck continuity_check(const StationaryFamily& family, const RegularizedState& st, const FFSchedule& sched,
                                 double t, double step) {
  require_consistent(st, sched, t);
  const BarrierGeometry geo = family.geometry();
  const Grid& g = family.grid();
  const Index i1 = g.node(geo.x1);
  const Index i2 = g.node(geo.x2);
  ContinuityCheck out;
  out.lhs = current_decomposition(st, sched, t, geo.x2).total() - current_decomposition(st, sched, t, geo.x1).total();

  const double v = v_of_t(sched, t);
  if (v == 0.0) return out;
  const double r = st.sol.R;
  auto mass = [&](double rr) {
    const RealField rho = family.phi(rr).cwiseAbs2();
    return numerics::integrate(rho, g, i1, i2);
  };
  const ParameterRange range = family.analytic();
  double d_mass;
  if (range.contains(r - 2.0 * step) && range.contains(r + 2.0 * step)) {
    d_mass = numerics::five_point_first(mass(r - 2.0 * step), mass(r - step), mass(r + step), mass(r + 2.0 * step), step);
  } else {
    const double h = range.contains(r + 2.0 * step) ? step : -step;
    const double m0 = mass(r);
    d_mass = (4.0 * (mass(r + h) - m0) - (mass(r + 2.0 * h) - m0)) / (2.0 * h);
  }
  out.rhs = -v * d_mass;
  return out;
}

TransportTrace transport_trace(const StationaryFamily& family, const FFSchedule& sched, const std::vector<double>& times,
                               double c, JetSteps steps) {
  validate(sched);
  const BarrierGeometry geo = family.geometry();
  TransportTrace tr;
  tr.k = family.k();
  tr.times = times;
  for (double t : times) {
    const double r = R_of_t(sched, t);
    const RegularizedState st = regularize(family, r, c, steps);
    const TransportCoefficients co = transport_coefficients(st, sched, t, geo);
    const TransportProbabilities ad = stationary_transport(st.sol);
    const CurrentComponents c1 = current_decomposition(st, sched, t, geo.x1);
    const CurrentComponents c2 = current_decomposition(st, sched, t, geo.x2);
    tr.R.push_back(r);
    tr.T_ff.push_back(co.T_ff);
    tr.R_ff.push_back(co.R_ff);
    tr.delta_u.push_back(unitarity_deviation(st, sched, t, geo));
    tr.T_adiabatic.push_back(ad.T);
    tr.R_adiabatic.push_back(ad.R);
    tr.j_ad_x1.push_back(c1.j_ad);
    tr.j_ad_x2.push_back(c2.j_ad);
    tr.j_nad_x1.push_back(c1.j_nad);
    tr.j_nad_x2.push_back(c2.j_nad);
    tr.continuity_residual.push_back(continuity_check(family, st, sched, t).residual() / (units::hbar_over_m * tr.k));
  }
  return tr;
}

std::vector<double> uniform_times(const FFSchedule& sched, int n) {
  if (n < 1) throw DomainError("uniform_times: need at least one interval");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(i == n ? sched.T_FF : sched.T_FF * i / n);
  return out;
}

}  // namespace ffwd

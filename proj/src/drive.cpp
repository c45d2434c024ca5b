#include "ffwd/drive.hpp"

#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_consistent(const RegularizedState& st, const FFSchedule& sched, double t) {
  const double r = R_of_t(sched, t);
  if (std::abs(r - st.sol.R) > 1e-9 * std::max(1.0, std::abs(r)))
    throw DomainError("state regularized at R = " + std::to_string(st.sol.R) + " but the schedule gives R(t) = " +
                      std::to_string(r));
}

RealField v_ff_of(const RegularizedState& st, double v) {
  const RegularizedFields& f = st.fields;
  const double hbar = units::hbar;
  const double hm = units::hbar * units::hbar / units::mass;
  return -hm * v * f.dtheta_dx.cwiseProduct(st.d_eta_dx) - 0.5 * hm * v * v * f.dtheta_dx.cwiseAbs2() -
         hbar * v * st.d_eta_dR;
}

}  // namespace

DrivePotentials drive_potentials(const RegularizedState& st, const FFSchedule& sched, double t) {
  require_consistent(st, sched, t);
  const double v = v_of_t(sched, t);
  return {-units::hbar * v * st.fields.dtheta_dx, v_ff_of(st, v)};
}

RealField electric_field(const RegularizedState& st, const FFSchedule& sched, double t) {
  require_consistent(st, sched, t);
  const double v = v_of_t(sched, t);
  const double vd = v_dot(sched, t);
  const RealField dA_dt = -units::hbar * (vd * st.fields.dtheta_dx + v * v * st.d_dtheta_dx_dR);
  return -dA_dt - numerics::derivative(v_ff_of(st, v), st.sol.grid);
}

double electric_field(const RegularizedState& st, const FFSchedule& sched, double t, double x) {
  const Index i = st.sol.grid.node(x);
  if (st.sol.grid.is_break(i)) throw DomainError("electric_field: undefined at a delta support");
  return electric_field(st, sched, t)(i);
}

ElectricFieldTerms electric_field_terms(const RegularizedState& st, const FFSchedule& sched, double t) {
  require_consistent(st, sched, t);
  const Grid& g = st.sol.grid;
  const RegularizedFields& f = st.fields;
  const double v = v_of_t(sched, t);
  const double vd = v_dot(sched, t);
  const double h2m = units::kinetic_scale;
  ElectricFieldTerms e;
  e.rate = units::hbar * vd * f.dtheta_dx;
  e.parameter = units::hbar * v * v * st.d_dtheta_dx_dR;
  e.cross = h2m * v * numerics::derivative(RealField(f.dtheta_dx.cwiseProduct(st.d_eta_dx)), g);
  e.quadratic = h2m * v * v * numerics::derivative(RealField(f.dtheta_dx.cwiseAbs2()), g);
  e.phase = units::hbar * v * numerics::derivative(st.d_eta_dR, g);
  return e;
}

ComplexField mn_wavefunction(const RegularizedState& st, double v, double t) {
  const Complex dyn = std::exp(-kI * st.sol.energy * t / units::hbar);
  return (st.sol.phi0.array() * (kI * v * st.fields.theta.array()).exp() * dyn).matrix();
}

MNGaugeState gauge_transform_mn(const RegularizedState& st, const FFSchedule& sched, double t) {
  require_consistent(st, sched, t);
  const double v = v_of_t(sched, t);
  const double vd = v_dot(sched, t);
  MNGaugeState out;
  out.psi = mn_wavefunction(st, v, t);
  out.v_ff = v_ff_of(st, v) - units::hbar * vd * st.fields.theta - units::hbar * v * v * st.dtheta_dR;
  return out;
}

double mn_current(const RegularizedState& st, const FFSchedule& sched, double t, double x) {
  require_consistent(st, sched, t);
  const Index i = st.sol.grid.node(x);
  const ComplexField psi = mn_wavefunction(st, v_of_t(sched, t), t);
  const ComplexField dpsi = numerics::derivative(psi, st.sol.grid);
  return (std::conj(psi(i)) * units::hbar_over_m * dpsi(i) / kI).real();
}

ModulatedCoefficients modulated_coefficients(const RegularizedState& st, const FFSchedule& sched, double t,
                                             const BarrierGeometry& geo) {
  require_consistent(st, sched, t);
  const double v = v_of_t(sched, t);
  const Grid& g = st.sol.grid;
  const double th2 = st.fields.theta(g.node(geo.x2));
  const double th1 = st.fields.theta(g.node(geo.x1));
  return {st.sol.t_r * std::exp(kI * v * th2), st.sol.r_f * std::exp(kI * v * th1)};
}

double si_field(double e_ff, double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("si_field: wavelength must be positive");
  return 1e6 / wavelength * e_ff;
}

double DriveFieldSet::max_abs_field(double x_abs) const {
  double m = 0.0;
  for (Index j = 0; j < grid.size(); ++j) {
    if (std::abs(grid.x(j)) > x_abs || grid.is_break(j)) continue;
    m = std::max(m, e_ff.col(j).cwiseAbs().maxCoeff());
  }
  return m;
}

DriveFieldSet drive_field_lattice(const StationaryFamily& family, const FFSchedule& sched,
                                  const std::vector<double>& times, double c, JetSteps steps) {
  DriveFieldSet set;
  set.grid = family.grid();
  set.times = times;
  const Index nt = static_cast<Index>(times.size());
  const Index nx = set.grid.size();
  set.a_ff.resize(nt, nx);
  set.v_ff.resize(nt, nx);
  set.e_ff.resize(nt, nx);
  for (Index n = 0; n < nt; ++n) {
    const double t = times[static_cast<std::size_t>(n)];
    const RegularizedState st = regularize(family, R_of_t(sched, t), c, steps);
    const DrivePotentials p = drive_potentials(st, sched, t);
    set.a_ff.row(n) = p.a_ff.transpose();
    set.v_ff.row(n) = p.v_ff.transpose();
    set.e_ff.row(n) = electric_field(st, sched, t).transpose();
  }
  return set;
}

}  // namespace ffwd

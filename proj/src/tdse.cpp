#include "ffwd/tdse.hpp"

#include <cmath>

#include "ffwd/drive.hpp"
#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/regularize.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kNormDriftLimit = 0.1;

void require_smooth(const BarrierModel& model) {
  if (model.kind() == BarrierKind::DoubleDelta)
    throw DomainError("time-dependent checks need a smooth potential; the double-delta model is verified in closed form");
}

RealField potential_on(const BarrierModel& model, const Grid& g, double r) {
  RealField v(g.size());
  for (Index i = 0; i < g.size(); ++i) v(i) = eval_v0(model, g.x(i), r);
  return v;
}

// (H - E) psi with the 4th-order Laplacian.
ComplexField apply_shifted_hamiltonian(const ComplexField& psi, const RealField& potential, double energy,
                                       const Grid& g) {
  return (-units::kinetic_scale * numerics::second_derivative(psi, g).array() +
          (potential.array() - energy) * psi.array())
      .matrix();
}

double interior_max(const ComplexField& r) { return r.segment(2, r.size() - 4).cwiseAbs().maxCoeff(); }

// H(t) - E on the grid: V0 + V_MN - E.
RealField shifted_potential(const StationaryFamily& family, const FFSchedule& sched, double t, double c) {
  const double r = R_of_t(sched, t);
  const RegularizedState st = regularize(family, r, c);
  const RealField v0 = potential_on(family.model(), family.grid(), r);
  return (v0 + gauge_transform_mn(st, sched, t).v_ff).array() - family.energy();
}

}  // namespace

PropagatorConfig PropagatorConfig::residual_default() {
  PropagatorConfig c;
  // Spacing 2^-8: every node is exactly representable, so the samples carry
  // no coordinate rounding.
  c.x_min = -4.0;
  c.x_max = 4.0;
  c.nx = 2049;
  c.dt = 0.1;
  return c;
}

Grid PropagatorConfig::grid() const { return Grid::uniform(x_min, x_max, nx); }

PropagatorConfig PropagatorConfig::refined(int factor) const {
  PropagatorConfig c = *this;
  c.nx = (nx - 1) * factor + 1;
  c.dt = dt / factor;
  c.record_every = record_every * factor;
  return c;
}

ComplexField analytic_state(const StationaryFamily& family, const FFSchedule& sched, double t, double c) {
  const double r = R_of_t(sched, t);
  const double v = v_of_t(sched, t);
  const ScatteringSolution sol = family.solve(r);
  if (v == 0.0) return sol.phi0;
  const RegularizedFields f = theta_fields(sol, d_dR_density(family, r).values, c);
  return (sol.phi0.array() * (kI * v * f.theta.array()).exp()).matrix();
}

double pde_residual(const BarrierModel& model, double k, const FFSchedule& sched, double t,
                    const PropagatorConfig& config) {
  require_smooth(model);
  validate(sched);
  const StationaryFamily family(model, k, config.grid());
  const double dt = config.dt;
  const double c = config.c;
  ComplexField dpsi_dt;
  ComplexField psi;
  if (t - dt < 0.0 || t >= sched.T_FF) {
    psi = analytic_state(family, sched, t, c);
    const ComplexField p1 = analytic_state(family, sched, t + dt, c);
    const ComplexField p2 = analytic_state(family, sched, t + 2.0 * dt, c);
    dpsi_dt = (-3.0 * psi + 4.0 * p1 - p2) / (2.0 * dt);
  } else {
    psi = analytic_state(family, sched, t, c);
    dpsi_dt = (analytic_state(family, sched, t + dt, c) - analytic_state(family, sched, t - dt, c)) / (2.0 * dt);
  }
  const RealField w = shifted_potential(family, sched, t, c);
  const ComplexField hpsi =
      (-units::kinetic_scale * numerics::second_derivative(psi, family.grid()).array() + w.array() * psi.array())
          .matrix();
  return interior_max(kI * units::hbar * dpsi_dt - hpsi);
}

double stationary_residual(const BarrierModel& model, double k, double r, const PropagatorConfig& config) {
  require_smooth(model);
  const StationaryFamily family(model, k, config.grid());
  const ScatteringSolution sol = family.solve(r);
  return interior_max(apply_shifted_hamiltonian(sol.phi0, potential_on(model, sol.grid, r), sol.energy, sol.grid));
}

ResidualConvergence residual_convergence(const BarrierModel& model, double k, const FFSchedule& sched, double t,
                                         int levels, const PropagatorConfig& base) {
  ResidualConvergence out;
  PropagatorConfig cfg = base;
  for (int l = 0; l < levels; ++l) {
    out.residuals.push_back(pde_residual(model, k, sched, t, cfg));
    if (l > 0) out.orders.push_back(std::log2(out.residuals[l - 1] / out.residuals[l]));
    cfg = cfg.refined(2);
  }
  return out;
}

double windowed_fidelity(const ComplexField& a, const ComplexField& b, const Grid& grid, Index i0, Index i1) {
  const ComplexField overlap = a.conjugate().cwiseProduct(b);
  const Complex ab = numerics::integrate(overlap, grid, i0, i1);
  const double aa = numerics::integrate(RealField(a.cwiseAbs2()), grid, i0, i1);
  const double bb = numerics::integrate(RealField(b.cwiseAbs2()), grid, i0, i1);
  return std::abs(ab) / std::sqrt(aa * bb);
}

FidelityTrace propagate(const BarrierModel& model, double k, const FFSchedule& sched, const PropagatorConfig& config,
                        bool with_residual) {
  require_smooth(model);
  validate(sched);
  if (config.nx < 2001) throw StepSizeError("propagate: nx must be at least 2001");
  if (!(config.dt > 0.0)) throw StepSizeError("propagate: dt must be positive");
  const Grid grid = config.grid();
  const StationaryFamily family(model, k, grid);
  const BarrierGeometry geo = family.geometry();
  const Index i1 = grid.node(geo.x1);
  const Index i2 = grid.node(geo.x2);
  const Index n = grid.size();
  const Index m = n - 2;  // interior unknowns
  const double h = grid.step;
  const double dt = config.dt;
  const double t_end = config.t_end < 0.0 ? sched.T_FF : config.t_end;
  const long steps = std::lround(t_end / dt);
  const double kin = units::kinetic_scale / (h * h);

  FidelityTrace out;
  auto discrete_mass = [&](const ComplexField& psi) { return h * psi.segment(i1, i2 - i1 + 1).squaredNorm(); };
  // Current between nodes i and i+1 consistent with the 2nd-order Laplacian.
  auto link_current = [&](const ComplexField& psi, Index i) {
    return units::hbar_over_m * (std::conj(psi(i)) * psi(i + 1)).imag() / h;
  };
  auto record = [&](double t, const ComplexField& num, const ComplexField& exact) {
    out.times.push_back(t);
    const double f = windowed_fidelity(exact, num, grid, i1, i2);
    out.fidelity.push_back(f);
    const ComplexField diff = num - exact;
    const double rel = std::sqrt(h * diff.segment(i1, i2 - i1 + 1).squaredNorm() / discrete_mass(exact));
    out.max_relative_error = std::max(out.max_relative_error, rel);
    out.min_fidelity = std::min(out.min_fidelity, f);
    out.mass.push_back(numerics::integrate(RealField(num.cwiseAbs2()), grid, i1, i2));
    const ComplexField d = numerics::derivative(num, grid);
    out.j_x1.push_back(units::hbar_over_m * (std::conj(num(i1)) * d(i1)).imag());
    out.j_x2.push_back(units::hbar_over_m * (std::conj(num(i2)) * d(i2)).imag());
    if (with_residual) out.residual.push_back(pde_residual(model, k, sched, t));
  };

  ComplexField psi = analytic_state(family, sched, 0.0, config.c);
  record(0.0, psi, psi);

  ComplexField lower(m), diag(m), upper(m), rhs(m);
  for (long s = 0; s < steps; ++s) {
    const double t0 = s * dt;
    const double t1 = s + 1 == steps ? t_end : (s + 1) * dt;
    const double tm = 0.5 * (t0 + t1);
    const double tau = t1 - t0;
    const RealField w = shifted_potential(family, sched, tm, config.c);
    const ComplexField exact = analytic_state(family, sched, t1, config.c);

    // (1 + i tau/2 H) psi1 = (1 - i tau/2 H) psi0, H tridiagonal.
    const Complex a = 0.5 * kI * tau / units::hbar;
    for (Index j = 0; j < m; ++j) {
      const Index i = j + 1;
      const Complex hpsi = kin * (2.0 * psi(i) - psi(i - 1) - psi(i + 1)) + w(i) * psi(i);
      rhs(j) = psi(i) - a * hpsi;
      lower(j) = -a * kin;
      upper(j) = -a * kin;
      diag(j) = 1.0 + a * (2.0 * kin + w(i));
    }
    rhs(0) -= lower(0) * exact(0);
    rhs(m - 1) -= upper(m - 1) * exact(n - 1);
    ComplexField next(n);
    next(0) = exact(0);
    next(n - 1) = exact(n - 1);
    next.segment(1, m) = numerics::solve_tridiagonal(lower, diag, upper, rhs);

    if (!next.allFinite()) throw StabilityError("propagate: non-finite state at t = " + std::to_string(t1));
    const double ratio = std::sqrt(discrete_mass(next) / discrete_mass(exact));
    if (std::abs(ratio - 1.0) > kNormDriftLimit)
      throw StabilityError("propagate: windowed norm drifted by " + std::to_string(ratio - 1.0) + " at t = " +
                           std::to_string(t1));

    // Discrete continuity: the CN update conserves h sum |psi|^2 up to the
    // link currents at the window edges, evaluated at the midpoint state.
    const ComplexField mid = 0.5 * (psi + next);
    const double balance = (discrete_mass(next) - discrete_mass(psi)) / tau -
                           (link_current(mid, i1 - 1) - link_current(mid, i2));
    out.max_balance_error = std::max(out.max_balance_error, std::abs(balance));

    psi = std::move(next);
    if ((s + 1) % config.record_every == 0 || s + 1 == steps) record(t1, psi, exact);
  }

  const double r_end = R_of_t(sched, t_end);
  if (t_end >= sched.T_FF) out.final_target_fidelity = windowed_fidelity(family.phi(r_end), psi, grid, i1, i2);
  else out.final_target_fidelity = out.fidelity.back();
  return out;
}

}  // namespace ffwd

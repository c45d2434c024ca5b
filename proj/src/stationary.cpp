#include "ffwd/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/specfun.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

constexpr Complex kI{0.0, 1.0};

// log(1 + e^u) without overflow.
double softplus(double u) { return u > 30.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double logistic(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

void require_propagating(double k, double threshold) {
  if (!(k > threshold))
    throw ThresholdError("wavenumber k = " + std::to_string(k) + " must exceed " + std::to_string(threshold));
}

double eckart_kprime(double k) {
  require_propagating(k, 1.0);
  return std::sqrt(k * k - 1.0);
}

// Derivative jump strength (phi'(x+) - phi'(x-) = g phi(x)) from a strength
// in units of hbar^2/2m.
double jump_strength(double strength) { return 2.0 * units::mass / (units::hbar * units::hbar) * units::kinetic_scale * strength; }

ScatteringSolution eckart_state(double k, double A, double l, const Grid& grid) {
  if (!(A > -1.0)) throw RangeError("solve_eckart: A must exceed -1");
  const double kp = eckart_kprime(k);
  const EckartCoefficients coef = eckart_coefficients(k, A, l);
  const Complex delta = std::sqrt(Complex(A - 1.0 / (4.0 * l * l)));
  const Complex a = 0.5 + kI * (k - kp + delta) * l;
  const Complex b = 0.5 + kI * (k - kp - delta) * l;
  const Complex c = 1.0 - 2.0 * kI * kp * l;
  const specfun::Hypergeometric2F1 f(a, b, c);

  ScatteringSolution sol;
  sol.k = k;
  sol.kprime = kp;
  sol.energy = units::kinetic_scale * k * k;
  sol.R = A;
  sol.grid = grid;
  sol.t_r = coef.t_r;
  sol.r_f = coef.r_f;
  sol.phi0.resize(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double u = x / l;
    const double lse = softplus(u);  // log(1 - xi), xi = -e^{x/l}
    const double z = logistic(-u);   // 1 / (1 - xi)
    const double w = logistic(u);    // -xi / (1 - xi) = 1 - z
    const Complex prefactor = std::exp(kI * (kp * l * lse + k * (x - l * lse)));
    sol.phi0(i) = coef.t_r * prefactor * f(z, w);
  }
  sol.split_amplitude_phase();
  return sol;
}

ScatteringSolution double_delta_state(double k, double gamma, double a, double h_min, double h_max,
                                      const Grid& grid) {
  require_propagating(k, 0.0);
  const DoubleDeltaCoefficients coef = double_delta_coefficients(k, gamma, a, h_min, h_max);
  ScatteringSolution sol;
  sol.k = k;
  sol.kprime = k;
  sol.energy = units::kinetic_scale * k * k;
  sol.R = gamma;
  sol.grid = grid;
  sol.t_r = coef.t_r;
  sol.r_f = coef.r_f;
  sol.phi0.resize(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const Complex in = std::exp(kI * k * x);
    const Complex out = std::exp(-kI * k * x);
    if (x < -a)
      sol.phi0(i) = in + coef.r_f * out;
    else if (x > a)
      sol.phi0(i) = coef.t_r * in;
    else
      sol.phi0(i) = coef.A * in + coef.B * out;
  }
  sol.split_amplitude_phase();
  return sol;
}

ScatteringSolution free_state(double k, double r, const Grid& grid) {
  ScatteringSolution sol;
  sol.k = k;
  sol.kprime = k;
  sol.energy = units::kinetic_scale * k * k;
  sol.R = r;
  sol.grid = grid;
  sol.t_r = 1.0;
  sol.r_f = 0.0;
  // Phase in extended precision so each sample is correctly rounded; the
  // double product k*x alone carries an error growing with |x|.
  sol.phi0.resize(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const long double phase = static_cast<long double>(k) * static_cast<long double>(grid.x(i));
    sol.phi0(i) = Complex(static_cast<double>(std::cos(phase)), static_cast<double>(std::sin(phase)));
  }
  sol.split_amplitude_phase();
  return sol;
}

}  // namespace

void ScatteringSolution::split_amplitude_phase() {
  phibar = phi0.cwiseAbs();
  eta = numerics::unwrap_phase(phi0);
}

EckartCoefficients eckart_coefficients(double k, double A, double l) {
  using specfun::log_gamma;
  const double kp = eckart_kprime(k);
  const Complex delta = std::sqrt(Complex(A - 1.0 / (4.0 * l * l)));
  const Complex a = 0.5 + kI * (k - kp + delta) * l;
  const Complex b = 0.5 + kI * (k - kp - delta) * l;
  const Complex c = 1.0 - 2.0 * kI * kp * l;
  const Complex log_t = log_gamma(0.5 + kI * (-k - kp - delta) * l) + log_gamma(0.5 + kI * (-k - kp + delta) * l) -
                        log_gamma(c) - log_gamma(-2.0 * kI * k * l);
  const Complex log_ratio = log_gamma(c) + log_gamma(2.0 * kI * k * l) - log_gamma(a) - log_gamma(b);
  return {std::exp(log_t), std::exp(log_t + log_ratio), kp};
}

ScatteringSolution solve_eckart(double k, double A, double l, const Grid& grid) {
  return eckart_state(k, A, l, grid);
}

double eckart_transmission_closed(double k, double A, double l) {
  const double kp = eckart_kprime(k);
  const double two_pi_l = 2.0 * units::pi * l;
  const double sum = std::cosh(two_pi_l * (k + kp));
  const double numerator = sum - std::cosh(two_pi_l * (k - kp));
  const double d2 = A - 1.0 / (4.0 * l * l);
  const double tail = A * l * l < 0.25 ? std::cos(two_pi_l * std::sqrt(-d2)) : std::cosh(two_pi_l * std::sqrt(d2));
  return numerator / (sum + tail);
}

ReflectionFit fit_reflection(const ScatteringSolution& sol, double x_lo, double x_hi) {
  Complex acc(0.0);
  int count = 0;
  for (Index i = 0; i < sol.grid.size(); ++i) {
    const double x = sol.grid.x(i);
    if (x < x_lo || x > x_hi) continue;
    acc += (sol.phi0(i) - std::exp(kI * sol.k * x)) * std::exp(kI * sol.k * x);
    ++count;
  }
  if (count == 0) throw StepSizeError("fit_reflection: no grid nodes in the fitting window");
  ReflectionFit fit;
  fit.r_f = acc / static_cast<double>(count);
  double sq = 0.0;
  for (Index i = 0; i < sol.grid.size(); ++i) {
    const double x = sol.grid.x(i);
    if (x < x_lo || x > x_hi) continue;
    sq += std::norm(sol.phi0(i) - std::exp(kI * sol.k * x) - fit.r_f * std::exp(-kI * sol.k * x));
  }
  fit.rms_residual = std::sqrt(sq / count);
  return fit;
}

DoubleDeltaCoefficients double_delta_coefficients(double k, double gamma, double a, double h_min, double h_max) {
  const double left = h_min + gamma;
  const double right = h_max - gamma;
  const Complex e2 = std::exp(2.0 * kI * a * k);
  const Complex e4 = std::exp(4.0 * kI * a * k);
  DoubleDeltaCoefficients c;
  c.delta = left * right * (-1.0 + e4) + 4.0 * k * k + 2.0 * kI * (h_min + h_max) * k;
  c.t_r = 4.0 * k * k / c.delta;
  c.r_f = e2 / c.delta * (left * right * (-1.0 + 1.0 / e4) - 2.0 * kI * k * (right + left / e4));
  c.A = 2.0 * k * (2.0 * k + kI * right) / c.delta;
  c.B = -2.0 * kI * k * right * e2 / c.delta;
  return c;
}

ScatteringSolution solve_double_delta(double k, double gamma, double a, double h_min, double h_max,
                                      const Grid& grid) {
  BarrierModel::double_delta(a, h_min, h_max).require_admitted(gamma);
  return double_delta_state(k, gamma, a, h_min, h_max, grid);
}

ScatteringSolution numeric_scattering_oracle(const BarrierModel& model, double k, double R, const Grid& grid) {
  const BarrierGeometry geo = barrier_geometry(model);
  require_propagating(k, geo.k_threshold);
  model.require_admitted(R);
  const double kp = std::sqrt(k * k - 2.0 * units::mass / (units::hbar * units::hbar) * geo.v0c);
  const double h = grid.step;

  // phi'' = q(x) phi with q = (2m/hbar^2)(V0 - E).
  const double e = units::kinetic_scale * k * k;
  auto q = [&](double x) { return 2.0 * units::mass / (units::hbar * units::hbar) * (eval_v0(model, x, R) - e); };

  double q_max = std::abs(q(grid.front()));
  for (Index i = 0; i < grid.size(); ++i) q_max = std::max(q_max, std::abs(q(grid.x(i))));
  if (h * std::sqrt(q_max) > 0.05) throw StepSizeError("numeric_scattering_oracle: step too coarse for wavenumber");
  if (model.kind() == BarrierKind::Eckart && h > model.length() / 10.0)
    throw StepSizeError("numeric_scattering_oracle: step exceeds l/10");

  struct Jump {
    double x;
    double g;
  };
  std::vector<Jump> jumps;
  if (model.kind() == BarrierKind::DoubleDelta) {
    const DeltaStrengths s = delta_strengths(model, R);
    jumps.push_back({-model.half_separation(), jump_strength(s.left)});
    jumps.push_back({model.half_separation(), jump_strength(s.right)});
  }

  using State = std::array<Complex, 2>;  // (phi, phi')
  auto rhs = [&](double x, const State& y) { return State{y[1], q(x) * y[0]}; };
  auto rk4 = [&](double x, State y, double dx) {
    const State k1 = rhs(x, y);
    const State k2 = rhs(x + 0.5 * dx, {y[0] + 0.5 * dx * k1[0], y[1] + 0.5 * dx * k1[1]});
    const State k3 = rhs(x + 0.5 * dx, {y[0] + 0.5 * dx * k2[0], y[1] + 0.5 * dx * k2[1]});
    const State k4 = rhs(x + dx, {y[0] + dx * k3[0], y[1] + dx * k3[1]});
    for (int j = 0; j < 2; ++j) y[j] += dx / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    return y;
  };

  const Index n = grid.size();
  ComplexField phi(n);
  const double x_end = grid.back();
  State y{std::exp(kI * kp * x_end), kI * kp * std::exp(kI * kp * x_end)};
  phi(n - 1) = y[0];
  // Jumps sitting exactly on the right end are treated as already crossed.
  for (Index i = n - 1; i > 0; --i) {
    double x = grid.x(i);
    const double x_next = grid.x(i - 1);
    for (const Jump& jmp : jumps) {
      if (jmp.x < x && jmp.x >= x_next) {
        y = rk4(x, y, jmp.x - x);
        x = jmp.x;
        y[1] -= jmp.g * y[0];  // phi'(x-) = phi'(x+) - g phi(x)
      }
    }
    if (x != x_next) y = rk4(x, y, x_next - x);
    phi(i - 1) = y[0];
  }

  const double x0 = grid.front();
  const Complex incoming = 0.5 * (y[0] + y[1] / (kI * k)) * std::exp(-kI * k * x0);
  const Complex reflected = 0.5 * (y[0] - y[1] / (kI * k)) * std::exp(kI * k * x0);

  ScatteringSolution sol;
  sol.k = k;
  sol.kprime = kp;
  sol.energy = e;
  sol.R = R;
  sol.grid = grid;
  sol.phi0 = phi / incoming;
  sol.t_r = 1.0 / incoming;
  sol.r_f = reflected / incoming;
  sol.split_amplitude_phase();
  return sol;
}

TransportProbabilities stationary_transport(const ScatteringSolution& sol) {
  return {sol.kprime / sol.k * std::norm(sol.t_r), std::norm(sol.r_f)};
}

StationaryFamily::StationaryFamily(BarrierModel model, double k, Grid grid)
    : model_(model), k_(k), grid_(std::move(grid)), analytic_(model.analytic()) {
  const BarrierGeometry geo = barrier_geometry(model_);
  require_propagating(k, geo.k_threshold);
  kprime_ = std::sqrt(k * k - 2.0 * units::mass / (units::hbar * units::hbar) * geo.v0c);
}

StationaryFamily StationaryFamily::custom(Grid grid, double k, PhiFunction phi, ParameterRange analytic) {
  StationaryFamily fam;
  fam.k_ = k;
  fam.kprime_ = k;
  fam.grid_ = std::move(grid);
  fam.analytic_ = analytic;
  fam.custom_ = std::move(phi);
  return fam;
}

double StationaryFamily::energy() const { return units::kinetic_scale * k_ * k_; }

ScatteringSolution StationaryFamily::solve(double r) const {
  if (!analytic_.contains(r)) throw RangeError("StationaryFamily: R = " + std::to_string(r) + " outside analytic range");
  if (custom_) {
    ScatteringSolution sol;
    sol.k = k_;
    sol.kprime = kprime_;
    sol.energy = energy();
    sol.R = r;
    sol.grid = grid_;
    sol.phi0 = custom_(r);
    sol.split_amplitude_phase();
    return sol;
  }
  switch (model_.kind()) {
    case BarrierKind::Eckart: return eckart_state(k_, r, model_.length(), grid_);
    case BarrierKind::DoubleDelta:
      return double_delta_state(k_, r, model_.half_separation(), model_.h_min(), model_.h_max(), grid_);
    case BarrierKind::Free: break;
  }
  return free_state(k_, r, grid_);
}

ComplexField StationaryFamily::phi(double r) const { return solve(r).phi0; }

TransportProbabilities StationaryFamily::transport(double r) const {
  switch (model_.kind()) {
    case BarrierKind::Eckart: {
      const EckartCoefficients c = eckart_coefficients(k_, r, model_.length());
      return {kprime_ / k_ * std::norm(c.t_r), std::norm(c.r_f)};
    }
    case BarrierKind::DoubleDelta: {
      const DoubleDeltaCoefficients c =
          double_delta_coefficients(k_, r, model_.half_separation(), model_.h_min(), model_.h_max());
      return {std::norm(c.t_r), std::norm(c.r_f)};
    }
    case BarrierKind::Free: break;
  }
  return {1.0, 0.0};
}

}  // namespace ffwd

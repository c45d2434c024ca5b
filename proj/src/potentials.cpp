#include "ffwd/potentials.hpp"

#include <cmath>
#include <limits>

#include "ffwd/errors.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

constexpr double kEckartAMax = 10.0;
// Saturation of the Eckart profile for A <= 10 holds beyond |x| = 10 l.
constexpr double kEckartSaturation = 10.0;

// e^u / (1 + e^u) without overflow.
double logistic(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

std::string to_string(BarrierKind kind) {
  switch (kind) {
    case BarrierKind::Free: return "free";
    case BarrierKind::Eckart: return "eckart";
    case BarrierKind::DoubleDelta: return "double_delta";
  }
  return "unknown";
}

BarrierModel BarrierModel::free() { return BarrierModel{}; }

BarrierModel BarrierModel::eckart(double l) {
  if (!(l > 0)) throw RangeError("eckart: length scale must be positive");
  BarrierModel m;
  m.kind_ = BarrierKind::Eckart;
  m.l_ = l;
  return m;
}

BarrierModel BarrierModel::double_delta(double a, double h_min, double h_max) {
  if (!(a > 0)) throw RangeError("double_delta: barrier half-separation must be positive");
  if (!(h_min >= 0) || !(h_max >= h_min)) throw RangeError("double_delta: need 0 <= h_min <= h_max");
  BarrierModel m;
  m.kind_ = BarrierKind::DoubleDelta;
  m.a_ = a;
  m.h_min_ = h_min;
  m.h_max_ = h_max;
  return m;
}

ParameterRange BarrierModel::admitted() const {
  switch (kind_) {
    case BarrierKind::Eckart: return {0.0, kEckartAMax};
    case BarrierKind::DoubleDelta: return {0.0, h_max_ - h_min_};
    case BarrierKind::Free: break;
  }
  const double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

ParameterRange BarrierModel::analytic() const {
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    // The hypergeometric solution is analytic in A; A > -1 keeps the
    // profile non-negative.
    case BarrierKind::Eckart: return {-1.0, inf};
    // Matching algebra holds for any real strengths; stay where both are
    // non-negative so the barrier character is preserved.
    case BarrierKind::DoubleDelta: return {-h_min_, h_max_};
    case BarrierKind::Free: break;
  }
  return {-inf, inf};
}

void BarrierModel::require_admitted(double r) const {
  const ParameterRange range = admitted();
  if (!range.contains(r))
    throw RangeError("adiabatic parameter " + std::to_string(r) + " outside admitted range [" +
                     std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
}

double eval_v0(const BarrierModel& model, double x, double r) {
  model.require_admitted(r);
  if (model.kind() != BarrierKind::Eckart) return 0.0;
  const double s = logistic(x / model.length());
  return units::kinetic_scale * (s + r * s * (1.0 - s));
}

double eval_dv0_dR(const BarrierModel& model, double x, double r) {
  model.require_admitted(r);
  if (model.kind() != BarrierKind::Eckart) return 0.0;
  const double s = logistic(x / model.length());
  return units::kinetic_scale * s * (1.0 - s);
}

DeltaStrengths delta_strengths(const BarrierModel& model, double r) {
  if (model.kind() != BarrierKind::DoubleDelta) return {};
  return {model.h_min() + r, model.h_max() - r};
}

DeltaStrengths d_delta_strengths_dR(const BarrierModel& model, double r) {
  model.require_admitted(r);
  if (model.kind() != BarrierKind::DoubleDelta) return {};
  return {1.0, -1.0};
}

BarrierGeometry barrier_geometry(const BarrierModel& model) {
  switch (model.kind()) {
    case BarrierKind::Eckart: {
      const double edge = kEckartSaturation * model.length();
      return {-edge, edge, units::kinetic_scale, std::sqrt(2.0 * units::mass * units::kinetic_scale) / units::hbar};
    }
    case BarrierKind::DoubleDelta:
      return {-model.half_separation(), model.half_separation(), 0.0, 0.0};
    case BarrierKind::Free: break;
  }
  return {-1.0, 1.0, 0.0, 0.0};
}

EckartPeak eckart_peak(const BarrierModel& model, double a_param) {
  if (model.kind() != BarrierKind::Eckart) throw RangeError("eckart_peak: not an Eckart model");
  if (!(a_param > 1.0)) throw RangeError("eckart_peak: interior maximum exists only for A > 1");
  const double x = model.length() * std::log((a_param + 1.0) / (a_param - 1.0));
  const double v = units::kinetic_scale * (1.0 + a_param) * (1.0 + a_param) / (4.0 * a_param);
  return {x, v};
}

}  // namespace ffwd

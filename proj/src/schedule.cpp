#include "ffwd/schedule.hpp"

#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/units.hpp"

namespace ffwd {

namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be non-negative, got " + std::to_string(t));
}

double omega(const FFSchedule& s) { return 2.0 * units::pi / s.T_FF; }

}  // namespace

std::string to_string(Profile p) { return p == Profile::Cosine ? "cosine" : "uniform"; }

Profile parse_profile(const std::string& name) {
  if (name == "cosine") return Profile::Cosine;
  if (name == "uniform") return Profile::Uniform;
  throw ConfigError("profile must be 'cosine' or 'uniform', got '" + name + "'");
}

void validate(const FFSchedule& sched) {
  if (!(sched.T_FF > 0.0)) throw ConfigError("T_FF must be positive, got " + std::to_string(sched.T_FF));
  if (!(sched.vbar >= 0.0)) throw ConfigError("vbar must be non-negative, got " + std::to_string(sched.vbar));
}

TimeScaling time_scaling(const FFSchedule& sched, double t, double alpha_bar) {
  if (!(t >= 0.0 && t <= sched.T_FF))
    throw DomainError("time_scaling: t = " + std::to_string(t) + " outside [0, T_FF]");
  if (!(alpha_bar >= 1.0)) throw DomainError("time_scaling: magnification must be >= 1");
  if (sched.profile == Profile::Uniform) return {alpha_bar, alpha_bar * t};
  const double w = omega(sched);
  return {alpha_bar - (alpha_bar - 1.0) * std::cos(w * t), alpha_bar * t - (alpha_bar - 1.0) * std::sin(w * t) / w};
}

double v_of_t(const FFSchedule& sched, double t) {
  require_nonnegative(t);
  if (t >= sched.T_FF) return 0.0;
  if (sched.profile == Profile::Uniform) return sched.vbar;
  return sched.vbar * (1.0 - std::cos(omega(sched) * t));
}

double v_dot(const FFSchedule& sched, double t) {
  require_nonnegative(t);
  if (t >= sched.T_FF || sched.profile == Profile::Uniform) return 0.0;
  const double w = omega(sched);
  return sched.vbar * w * std::sin(w * t);
}

double R_of_t(const FFSchedule& sched, double t) {
  require_nonnegative(t);
  if (t >= sched.T_FF) return sched.R_final();
  if (sched.profile == Profile::Uniform) return sched.R0 + sched.vbar * t;
  const double w = omega(sched);
  return sched.R0 + sched.vbar * (t - std::sin(w * t) / w);
}

}  // namespace ffwd

#pragma once

// Time scaling of the fast-forward protocol in the limit where the
// magnification factor diverges while the product with the slow rate stays
// finite. Everything is expressed through the parameter velocity v(t).

#include <string>

namespace ffwd {

enum class Profile { Cosine, Uniform };

std::string to_string(Profile p);
/// Accepts "cosine" / "uniform"; throws ConfigError otherwise.
Profile parse_profile(const std::string& name);

struct FFSchedule {
  double vbar = 1.0;  // mean parameter velocity
  double T_FF = 1.0;  // fast-forward duration
  Profile profile = Profile::Cosine;
  double R0 = 0.0;

  /// R at t >= T_FF.
  double R_final() const { return R0 + vbar * T_FF; }
};

/// Throws ConfigError for T_FF <= 0 or vbar < 0.
void validate(const FFSchedule& sched);

struct TimeScaling {
  double alpha = 1.0;
  double lambda = 0.0;  // advanced time
};

/// Finite magnification mode: alpha(t) = abar - (abar - 1) cos(2 pi t / T_FF)
/// (constant abar for the uniform profile) and its integral. Throws
/// DomainError for t outside [0, T_FF] and for abar < 1.
TimeScaling time_scaling(const FFSchedule& sched, double t, double alpha_bar);

/// v(t); zero for t >= T_FF. Throws DomainError for t < 0.
double v_of_t(const FFSchedule& sched, double t);
/// dv/dt; zero at and after T_FF.
double v_dot(const FFSchedule& sched, double t);
/// R(Lambda(t)) = R0 + int_0^t v.
double R_of_t(const FFSchedule& sched, double t);
/// d^2R/dt^2 = v_dot.
inline double R_ddot(const FFSchedule& sched, double t) { return v_dot(sched, t); }

}  // namespace ffwd

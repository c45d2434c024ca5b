#pragma once

// Adiabatically tunable 1D barriers V0(x, R). Energies are in units where
// hbar^2/2m = 1/2; delta strengths are stored as dimensionless multiples of
// hbar^2/2m.

#include <string>

namespace ffwd {

enum class BarrierKind { Free, Eckart, DoubleDelta };

std::string to_string(BarrierKind kind);

/// Closed interval of the adiabatic parameter.
struct ParameterRange {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double r) const { return r >= lo && r <= hi; }
};

struct BarrierGeometry {
  double x1 = 0.0;           // left edge of the R-dependent region
  double x2 = 0.0;           // right edge of the R-dependent region
  double v0c = 0.0;          // asymptotic potential for x >= x2
  double k_threshold = 0.0;  // propagating states need k > k_threshold
};

class BarrierModel {
 public:
  /// V0 = 0; R is inert. Used as a reference system.
  static BarrierModel free();
  /// Eckart step-plus-bump with length scale l, parameter A in [0, 10].
  static BarrierModel eckart(double l = 0.1);
  /// Strengths (h_min + Gamma) at x = -a and (h_max - Gamma) at x = +a,
  /// Gamma in [0, h_max - h_min].
  static BarrierModel double_delta(double a = 1.0, double h_min = 1.0, double h_max = 2.0);

  BarrierKind kind() const { return kind_; }
  double length() const { return l_; }
  double half_separation() const { return a_; }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }

  /// Parameter values accepted from users and configurations.
  ParameterRange admitted() const;
  /// Wider interval on which the closed-form solutions stay analytic in R;
  /// parameter-derivative stencils may sample anywhere inside it.
  ParameterRange analytic() const;

  /// Throws RangeError unless R lies in admitted().
  void require_admitted(double r) const;

 private:
  BarrierKind kind_ = BarrierKind::Free;
  double l_ = 0.0;
  double a_ = 0.0;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
};

struct DeltaStrengths {
  double left = 0.0;   // at x = -a, units hbar^2/2m
  double right = 0.0;  // at x = +a, units hbar^2/2m
};

/// Regular part of V0(x, R). For DoubleDelta this is zero everywhere; the
/// singular part is available through delta_strengths().
double eval_v0(const BarrierModel& model, double x, double r);

/// dV0/dR, analytic.
double eval_dv0_dR(const BarrierModel& model, double x, double r);

/// Delta strengths of the DoubleDelta model (zero for other kinds).
DeltaStrengths delta_strengths(const BarrierModel& model, double r);
/// d(strengths)/dGamma = (+1, -1) for DoubleDelta.
DeltaStrengths d_delta_strengths_dR(const BarrierModel& model, double r);

BarrierGeometry barrier_geometry(const BarrierModel& model);

/// Location and height of the Eckart maximum for A > 1.
struct EckartPeak {
  double x = 0.0;
  double v = 0.0;
};
EckartPeak eckart_peak(const BarrierModel& model, double a_param);

}  // namespace ffwd

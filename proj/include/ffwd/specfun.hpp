#pragma once

// Complex log-gamma and the Gauss hypergeometric function 2F1 with complex
// parameters, as needed by the closed-form Eckart scattering state.

#include <complex>

namespace ffwd::specfun {

using Complex = std::complex<double>;

/// Term cap for every power series evaluated here.
inline constexpr int kSeriesTermCap = 10000;
/// Series are summed until two consecutive terms fall below this fraction
/// of the partial sum.
inline constexpr double kSeriesTolerance = 1e-16;
/// |z| above which (and closer to 1 than to 0) the z -> 1-z connection
/// formula replaces the direct series.
inline constexpr double kTransformThreshold = 0.7;

/// log Gamma(z). Lanczos (g = 7, 9 terms) for Re z >= 1/2, reflection
/// otherwise. In the right half-plane the imaginary part is the continuous
/// branch that vanishes on the positive axis; in the left half-plane it
/// agrees with that branch modulo 2*pi. Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// Gamma(z) = exp(log_gamma(z)).
Complex gamma(Complex z);

/// True when z is (numerically) a non-positive integer on the real axis.
bool is_gamma_pole(Complex z);

/// Gauss 2F1(a, b; c; z) for fixed parameters, evaluated at many arguments.
/// Connection coefficients of the z -> 1-z transformation are computed once.
class Hypergeometric2F1 {
 public:
  /// Throws ParameterError when c is a non-positive integer.
  Hypergeometric2F1(Complex a, Complex b, Complex c);

  /// Throws ParameterError for |z| >= 1 outside the transformation's reach,
  /// NoConvergence when a series exhausts kSeriesTermCap terms.
  Complex operator()(Complex z) const;

  /// As above, with 1 - z supplied by the caller to avoid cancellation
  /// when z is close to 1.
  Complex operator()(Complex z, Complex one_minus_z) const;

  /// True when the connection formula is usable (c - a - b not an integer).
  bool has_transformation() const { return !degenerate_; }

 private:
  Complex a_, b_, c_;
  bool degenerate_ = false;
  Complex coef_regular_{};   // Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))
  Complex coef_singular_{};  // Gamma(c)Gamma(a+b-c) / (Gamma(a)Gamma(b))
};

/// One-shot 2F1(a, b; c; z).
Complex hyp2f1(Complex a, Complex b, Complex c, Complex z);

/// Direct power series of 2F1, no transformation. Exposed for tests and for
/// the degenerate parameter case.
Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z);

}  // namespace ffwd::specfun

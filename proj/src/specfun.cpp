#include "ffwd/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ffwd/errors.hpp"
#include "ffwd/units.hpp"

namespace ffwd::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * units::pi);
const double kLogPi = std::log(units::pi);

Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// log Gamma(c) + ... - log Gamma(d) - ...; a pole in the denominator makes
// the quotient vanish.
template <std::size_t N, std::size_t M>
Complex gamma_quotient(const std::array<Complex, N>& num, const std::array<Complex, M>& den) {
  for (const Complex& d : den)
    if (is_gamma_pole(d)) return Complex(0.0);
  Complex acc(0.0);
  for (const Complex& n : num) acc += log_gamma(n);
  for (const Complex& d : den) acc -= log_gamma(d);
  return std::exp(acc);
}

bool near_integer(Complex z, double tol) {
  return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

}  // namespace

bool is_gamma_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

Complex log_gamma(Complex z) {
  if (is_gamma_pole(z)) throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Reflection Gamma(z)Gamma(1-z) = pi / sin(pi z), with sin evaluated after
  // removing the nearest integer to keep relative accuracy near the poles.
  const double n = std::round(z.real());
  Complex s = std::sin(units::pi * (z - n));
  if (static_cast<long long>(n) % 2 != 0) s = -s;
  return kLogPi - std::log(s) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z) {
  if (is_gamma_pole(c)) throw ParameterError("hyp2f1: c is a non-positive integer");
  Complex term(1.0);
  Complex sum(1.0);
  int small_run = 0;
  for (int n = 0; n < kSeriesTermCap; ++n) {
    const double nd = static_cast<double>(n);
    term *= (a + nd) * (b + nd) / ((c + nd) * (nd + 1.0)) * z;
    sum += term;
    if (term == Complex(0.0)) return sum;  // terminating series
    if (std::abs(term) <= kSeriesTolerance * std::abs(sum)) {
      if (++small_run == 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw NoConvergence("hyp2f1: series did not converge within " + std::to_string(kSeriesTermCap) + " terms");
}

Hypergeometric2F1::Hypergeometric2F1(Complex a, Complex b, Complex c) : a_(a), b_(b), c_(c) {
  if (is_gamma_pole(c)) throw ParameterError("hyp2f1: c is a non-positive integer");
  const Complex s = c - a - b;
  degenerate_ = near_integer(s, 1e-8);
  if (degenerate_) return;
  coef_regular_ = gamma_quotient<2, 2>({c, s}, {c - a, c - b});
  coef_singular_ = gamma_quotient<2, 2>({c, -s}, {a, b});
}

Complex Hypergeometric2F1::operator()(Complex z) const { return (*this)(z, 1.0 - z); }

Complex Hypergeometric2F1::operator()(Complex z, Complex one_minus_z) const {
  if (z == Complex(0.0)) return 1.0;
  const double az = std::abs(z);
  const double aw = std::abs(one_minus_z);
  const bool transform = !degenerate_ && az > kTransformThreshold && aw < az;
  if (!transform) {
    if (az >= 1.0) throw ParameterError("hyp2f1: |z| >= 1 is outside the supported domain");
    return hyp2f1_series(a_, b_, c_, z);
  }
  const Complex s = c_ - a_ - b_;
  Complex value = coef_regular_ * hyp2f1_series(a_, b_, 1.0 - s, one_minus_z);
  if (coef_singular_ != Complex(0.0))
    value += coef_singular_ * std::exp(s * std::log(one_minus_z)) * hyp2f1_series(c_ - a_, c_ - b_, 1.0 + s, one_minus_z);
  return value;
}

Complex hyp2f1(Complex a, Complex b, Complex c, Complex z) { return Hypergeometric2F1(a, b, c)(z); }

}  // namespace ffwd::specfun

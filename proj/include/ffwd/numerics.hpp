#pragma once

// Discrete calculus on uniform grids: 4th-order finite differences that
// respect derivative breaks, cumulative composite Simpson quadrature, phase
// unwrapping and a tridiagonal solver. Everything is templated on the Eigen
// scalar so complex wave functions and real densities share one code path.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "ffwd/errors.hpp"
#include "ffwd/grid.hpp"

namespace ffwd::numerics {

namespace detail {

/// Contiguous node ranges [first, last] separated by grid breaks.
inline std::vector<std::pair<Index, Index>> segments(const Grid& grid) {
  std::vector<std::pair<Index, Index>> out;
  Index start = 0;
  for (Index b : grid.breaks) {
    out.emplace_back(start, b);
    start = b;
  }
  out.emplace_back(start, grid.size() - 1);
  return out;
}

}  // namespace detail

/// First derivative, 4th order. Central stencils in the interior of each
/// segment, one-sided 5-point stencils at segment ends. At a break node the
/// value is the right-sided limit.
template <typename Derived>
typename Derived::PlainObject derivative(const Eigen::MatrixBase<Derived>& f, const Grid& grid) {
  using Plain = typename Derived::PlainObject;
  const double inv = 1.0 / (12.0 * grid.step);
  Plain d(f.size());
  for (auto [s, e] : detail::segments(grid)) {
    if (e - s < 4) throw StepSizeError("derivative: segment shorter than 5 nodes");
    for (Index i = s + 2; i <= e - 2; ++i)
      d(i) = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) * inv;
    d(s) = (-25.0 * f(s) + 48.0 * f(s + 1) - 36.0 * f(s + 2) + 16.0 * f(s + 3) - 3.0 * f(s + 4)) * inv;
    d(s + 1) = (-3.0 * f(s) - 10.0 * f(s + 1) + 18.0 * f(s + 2) - 6.0 * f(s + 3) + f(s + 4)) * inv;
    d(e - 1) = (3.0 * f(e) + 10.0 * f(e - 1) - 18.0 * f(e - 2) + 6.0 * f(e - 3) - f(e - 4)) * inv;
    if (e != grid.size() - 1 && grid.is_break(e)) continue;  // keep right limit from next segment
    d(e) = (25.0 * f(e) - 48.0 * f(e - 1) + 36.0 * f(e - 2) - 16.0 * f(e - 3) + 3.0 * f(e - 4)) * inv;
  }
  return d;
}

/// Second derivative, 4th order, same segment handling as derivative().
template <typename Derived>
typename Derived::PlainObject second_derivative(const Eigen::MatrixBase<Derived>& f, const Grid& grid) {
  using Plain = typename Derived::PlainObject;
  const double inv = 1.0 / (12.0 * grid.step * grid.step);
  Plain d(f.size());
  for (auto [s, e] : detail::segments(grid)) {
    if (e - s < 5) throw StepSizeError("second_derivative: segment shorter than 6 nodes");
    for (Index i = s + 2; i <= e - 2; ++i)
      d(i) = (-f(i - 2) + 16.0 * f(i - 1) - 30.0 * f(i) + 16.0 * f(i + 1) - f(i + 2)) * inv;
    d(s) = (45.0 * f(s) - 154.0 * f(s + 1) + 214.0 * f(s + 2) - 156.0 * f(s + 3) + 61.0 * f(s + 4) -
            10.0 * f(s + 5)) * inv;
    d(s + 1) = (10.0 * f(s) - 15.0 * f(s + 1) - 4.0 * f(s + 2) + 14.0 * f(s + 3) - 6.0 * f(s + 4) +
                f(s + 5)) * inv;
    d(e - 1) = (10.0 * f(e) - 15.0 * f(e - 1) - 4.0 * f(e - 2) + 14.0 * f(e - 3) - 6.0 * f(e - 4) +
                f(e - 5)) * inv;
    if (e != grid.size() - 1 && grid.is_break(e)) continue;
    d(e) = (45.0 * f(e) - 154.0 * f(e - 1) + 214.0 * f(e - 2) - 156.0 * f(e - 3) + 61.0 * f(e - 4) -
            10.0 * f(e - 5)) * inv;
  }
  return d;
}

/// Cumulative composite Simpson integral F(x_i) = int_{x_origin}^{x_i} f.
/// Panels start at `origin` and restart at every break; a lone trailing
/// interval uses the 3-point quadratic (5, 8, -1)/12 rule.
template <typename Derived>
typename Derived::PlainObject cumulative_integral(const Eigen::MatrixBase<Derived>& f, const Grid& grid,
                                                  Index origin) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Index n = f.size();
  const double h = grid.step;
  Plain out(n);
  out(origin) = Scalar(0);

  // Walk outward from the origin in direction dir (+1 / -1). Values are
  // accumulated as oriented integrals, so the left walk is negated at the end.
  auto walk = [&](int dir) {
    auto at = [&](Index j) { return f(j); };
    Index s = origin;
    const Index stop = dir > 0 ? n - 1 : 0;
    Scalar acc_sign = Scalar(dir);
    while (s != stop) {
      Index e = stop;
      for (Index b : grid.breaks)
        if ((dir > 0 && b > s && b < e) || (dir < 0 && b < s && b > e)) e = b;
      const Index len = (e - s) * dir;
      for (Index j = 1; j <= len; ++j) {
        const Index i = s + dir * j;
        if (j % 2 == 0) {
          out(i) = out(i - 2 * dir) + acc_sign * (h / 3.0) * (at(i - 2 * dir) + 4.0 * at(i - dir) + at(i));
        } else if (j + 1 <= len) {
          out(i) = out(i - dir) + acc_sign * (h / 12.0) * (5.0 * at(i - dir) + 8.0 * at(i) - at(i + dir));
        } else if (j >= 2) {
          out(i) = out(i - dir) + acc_sign * (h / 12.0) * (-at(i - 2 * dir) + 8.0 * at(i - dir) + 5.0 * at(i));
        } else {
          out(i) = out(i - dir) + acc_sign * 0.5 * h * (at(i - dir) + at(i));
        }
      }
      s = e;
    }
  };
  walk(+1);
  walk(-1);
  return out;
}

/// Composite Simpson integral of f over nodes [i0, i1].
template <typename Derived>
typename Derived::Scalar integrate(const Eigen::MatrixBase<Derived>& f, const Grid& grid, Index i0, Index i1) {
  return cumulative_integral(f, grid, i0)(i1);
}

/// Continuous phase: principal argument at the first node, then principal
/// increments between neighbours.
inline RealField unwrap_phase(const ComplexField& psi) {
  RealField eta(psi.size());
  if (psi.size() == 0) return eta;
  eta(0) = std::arg(psi(0));
  for (Index i = 1; i < psi.size(); ++i) eta(i) = eta(i - 1) + std::arg(psi(i) / psi(i - 1));
  return eta;
}

/// Solve a tridiagonal system in place (Thomas algorithm). `lower(i)` couples
/// row i to i-1, `upper(i)` couples row i to i+1.
template <typename Scalar>
Field<Scalar> solve_tridiagonal(const Field<Scalar>& lower, const Field<Scalar>& diag, const Field<Scalar>& upper,
                                const Field<Scalar>& rhs) {
  const Index n = diag.size();
  Field<Scalar> c(n), d(n), x(n);
  c(0) = upper(0) / diag(0);
  d(0) = rhs(0) / diag(0);
  for (Index i = 1; i < n; ++i) {
    const Scalar m = diag(i) - lower(i) * c(i - 1);
    c(i) = i + 1 < n ? upper(i) / m : Scalar(0);
    d(i) = (rhs(i) - lower(i) * d(i - 1)) / m;
  }
  x(n - 1) = d(n - 1);
  for (Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

/// 5-point central first derivative from samples at x-2h, x-h, x+h, x+2h.
/// Equals Richardson extrapolation of the h and 2h central differences.
/// Differences are formed first, so equal samples give exactly zero.
template <typename T>
T five_point_first(const T& m2, const T& m1, const T& p1, const T& p2, double h) {
  return (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
}

/// 5-point central second derivative, differences taken against the centre.
template <typename T>
T five_point_second(const T& m2, const T& m1, const T& c, const T& p1, const T& p2, double h) {
  return (16.0 * ((p1 - c) + (m1 - c)) - ((p2 - c) + (m2 - c))) / (12.0 * h * h);
}

}  // namespace ffwd::numerics

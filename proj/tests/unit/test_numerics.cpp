#include <doctest.h>

#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/grid.hpp"
#include "ffwd/numerics.hpp"

using namespace ffwd;

namespace {

RealField poly(const Grid& g, int degree) {
  RealField f(g.size());
  for (Index i = 0; i < g.size(); ++i) f(i) = std::pow(g.x(i) - 0.1, degree);
  return f;
}

}  // namespace

TEST_CASE("grid nodes and refinement") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001);
  CHECK(g.step == doctest::Approx(1e-3));
  CHECK(g.node(-1.0) == 500);
  CHECK(g.node(1.0) == 2500);
  CHECK_THROWS_AS(g.node(0.00049), StepSizeError);
  const Grid r = g.refined(2);
  CHECK(r.size() == 6001);
  CHECK(r.x(r.node(1.0)) == doctest::Approx(1.0));
}

TEST_CASE("derivatives are exact on low-degree polynomials") {
  const Grid g = Grid::uniform(-1.0, 1.0, 201);
  for (int d = 0; d <= 4; ++d) {
    const RealField f = poly(g, d);
    const RealField df = numerics::derivative(f, g);
    const RealField d2f = numerics::second_derivative(f, g);
    for (Index i = 0; i < g.size(); ++i) {
      const double x = g.x(i) - 0.1;
      CHECK(std::abs(df(i) - (d ? d * std::pow(x, d - 1) : 0.0)) < 1e-9);
      CHECK(std::abs(d2f(i) - (d > 1 ? d * (d - 1) * std::pow(x, d - 2) : 0.0)) < 1e-6);
    }
  }
}

TEST_CASE("derivative converges at 4th order on smooth data") {
  double prev = 0.0;
  for (int n : {101, 201, 401}) {
    const Grid g = Grid::uniform(0.0, 2.0, n);
    const RealField f = g.x.array().sin();
    const double err = (numerics::derivative(f, g) - RealField(g.x.array().cos())).cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(std::log2(prev / err) > 3.8);
    prev = err;
  }
}

TEST_CASE("breaks keep stencils on one side") {
  // |x| has a kink at 0; with a break there the one-sided stencils are exact
  const Grid g = Grid::uniform(-1.0, 1.0, 201, {0.0});
  const RealField f = g.x.cwiseAbs();
  const RealField df = numerics::derivative(f, g);
  for (Index i = 0; i < g.size(); ++i) {
    const double expect = g.x(i) < 0.0 ? -1.0 : 1.0;
    CHECK(std::abs(df(i) - expect) < 1e-10);
  }
  CHECK(std::abs(numerics::integrate(f, g, 0, g.size() - 1) - 1.0) < 1e-14);
}

TEST_CASE("cumulative Simpson: exact for quadratics, for cubics at even offsets, anchored at the base node") {
  const Grid g = Grid::uniform(-2.0, 2.0, 401);
  const Index c = g.node(0.5);
  for (int d : {2, 3}) {
    const RealField F = numerics::cumulative_integral(poly(g, d), g, c);
    CHECK(F(c) == 0.0);
    for (Index i = 0; i < g.size(); ++i) {
      if (d == 3 && (i - c) % 2 != 0) continue;
      const double exact = (std::pow(g.x(i) - 0.1, d + 1) - std::pow(0.4, d + 1)) / (d + 1);
      CHECK(std::abs(F(i) - exact) < 1e-12);
    }
  }
}

TEST_CASE("five-point parameter stencils") {
  // exact for quartics, and zero on constant samples
  auto f = [](double x) { return 3.0 - x + 2 * x * x - 0.5 * x * x * x + 0.25 * x * x * x * x; };
  const double x = 0.3, h = 0.01;
  CHECK(numerics::five_point_first(f(x - 2 * h), f(x - h), f(x + h), f(x + 2 * h), h) ==
        doctest::Approx(-1 + 4 * x - 1.5 * x * x + x * x * x).epsilon(1e-10));
  CHECK(numerics::five_point_second(f(x - 2 * h), f(x - h), f(x), f(x + h), f(x + 2 * h), h) ==
        doctest::Approx(4 - 3 * x + 3 * x * x).epsilon(1e-8));
  const double c = 0.1234567890123;
  CHECK(numerics::five_point_first(c, c, c, c, 1e-5) == 0.0);
  CHECK(numerics::five_point_second(c, c, c, c, c, 1e-3) == 0.0);
}

TEST_CASE("tridiagonal solver") {
  const Index n = 50;
  ComplexField lo = ComplexField::Constant(n, Complex(-1, 0.2));
  ComplexField di = ComplexField::Constant(n, Complex(4, 1));
  ComplexField up = ComplexField::Constant(n, Complex(-1, -0.3));
  ComplexField x(n);
  for (Index i = 0; i < n; ++i) x(i) = Complex(std::sin(i), std::cos(2.0 * i));
  ComplexField rhs(n);
  for (Index i = 0; i < n; ++i) {
    rhs(i) = di(i) * x(i);
    if (i > 0) rhs(i) += lo(i) * x(i - 1);
    if (i + 1 < n) rhs(i) += up(i) * x(i + 1);
  }
  CHECK((numerics::solve_tridiagonal(lo, di, up, rhs) - x).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("phase unwrapping") {
  const Grid g = Grid::uniform(0.0, 20.0, 2001);
  ComplexField psi(g.size());
  for (Index i = 0; i < g.size(); ++i) psi(i) = 0.7 * std::exp(Complex(0, 1.3 * g.x(i) + 0.2));
  const RealField eta = numerics::unwrap_phase(psi);
  for (Index i = 0; i < g.size(); ++i) CHECK(std::abs(eta(i) - (1.3 * g.x(i) + 0.2)) < 1e-12);
}

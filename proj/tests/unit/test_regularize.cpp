#include <doctest.h>

#include <cmath>
#include <random>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/regularize.hpp"

using namespace ffwd;

namespace {

const Complex I(0, 1);

// Scale-invariant family |f(x/R)|^2 / R with a normalized Gaussian f.
StationaryFamily gaussian_family(const Grid& g) {
  return StationaryFamily::custom(
      g, 1.0,
      [g](double r) {
        ComplexField phi(g.size());
        for (Index i = 0; i < g.size(); ++i) {
          const double u = g.x(i) / r;
          phi(i) = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u) / std::sqrt(r);
        }
        return phi;
      },
      {0.1, 10.0});
}

// d rho / dGamma in the central domain from analytic coefficient derivatives.
double dd_central_density_derivative(double x, double k, double G) {
  const DoubleDeltaCoefficients c = double_delta_coefficients(k, G, 1.0, 1.0, 2.0);
  const double h1 = 1.0 + G, h2 = 2.0 - G;
  const Complex dDelta = (h2 - h1) * (std::exp(4.0 * I * k) - 1.0);
  const Complex dA = -2.0 * I * k / c.delta - c.A * dDelta / c.delta;
  const Complex dB = 2.0 * I * k * std::exp(2.0 * I * k) / c.delta - c.B * dDelta / c.delta;
  const Complex phi = c.A * std::exp(I * k * x) + c.B * std::exp(-I * k * x);
  const Complex dphi = dA * std::exp(I * k * x) + dB * std::exp(-I * k * x);
  return 2.0 * std::real(std::conj(phi) * dphi);
}

}  // namespace

TEST_CASE("free particle has no regularization fields") {
  const StationaryFamily fam(BarrierModel::free(), 1.3, Grid::uniform(-1.5, 1.5, 3001));
  const RegularizedState st = regularize(fam, 0.4);
  CHECK(st.fields.d_density_dR.cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.fields.dtheta_dx.cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.fields.theta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.fields.vtilde.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scale-invariant Gaussian: theta = m x^2 / (2 hbar R)") {
  const Grid g = Grid::uniform(-3.0, 3.0, 6001);
  const StationaryFamily fam = gaussian_family(g);
  for (double r : {1.0, 2.0}) {
    const RegularizedState st = regularize(fam, r);
    const RealField expect = g.x.cwiseAbs2() / (2.0 * r);
    CAPTURE(r);
    CHECK((st.fields.theta - expect).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((st.fields.dtheta_dx - g.x / r).cwiseAbs().maxCoeff() <= 1e-8);
  }
  CHECK(regularize(fam, 2.0).fields.theta(g.node(1.0)) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("defining equation residual and its convergence") {
  auto residual = [](Index n) {
    const Grid g = Grid::uniform(-1.5, 1.5, n);
    const RegularizedState st = regularize(StationaryFamily(BarrierModel::eckart(), 1.2, g), 5.0);
    CHECK(st.fields.theta(st.fields.c_index) == 0.0);
    CHECK(st.fields.J(st.fields.c_index) == 0.0);
    const RealField flux = st.fields.density.cwiseProduct(st.fields.dtheta_dx);
    return (numerics::derivative(flux, g) + st.fields.d_density_dR).cwiseAbs().maxCoeff();
  };
  CHECK(residual(3001) <= 1e-5);
  // coarse grids, where the spatial error dominates the parameter-difference noise
  double prev = residual(101);
  for (Index n : {201, 401}) {
    const double err = residual(n);
    CAPTURE(n);
    CHECK(std::log2(prev / err) >= 2.0);
    prev = err;
  }
}

TEST_CASE("theta at x2 is stable under grid refinement") {
  const BarrierModel m = BarrierModel::eckart();
  const Grid g1 = Grid::uniform(-1.5, 1.5, 3001);
  const Grid g2 = g1.refined(2);
  const double t1 = regularize(StationaryFamily(m, 1.2, g1), 5.0).fields.theta(g1.node(1.0));
  const double t2 = regularize(StationaryFamily(m, 1.2, g2), 5.0).fields.theta(g2.node(1.0));
  CHECK(std::isfinite(t1));
  CHECK(std::abs(t1 - t2) <= 1e-6);
}

TEST_CASE("Vtilde is smooth for Eckart and finite for double-delta") {
  const BarrierModel m = BarrierModel::eckart();
  const Grid g1 = Grid::uniform(-1.5, 1.5, 3001);
  const Grid g2 = g1.refined(2);
  const RealField v1 = regularize(StationaryFamily(m, 1.2, g1), 5.0).fields.vtilde;
  const RealField v2 = regularize(StationaryFamily(m, 1.2, g2), 5.0).fields.vtilde;
  const double scale = v1.cwiseAbs().maxCoeff();
  double jump = 0.0;
  for (Index i = g1.node(-1.0); i <= g1.node(1.0); ++i) jump = std::max(jump, std::abs(v1(i) - v2(2 * i)));
  CHECK(jump / scale <= 1e-4);

  const Grid gd = Grid::uniform(-1.5, 1.5, 3001, {-1.0, 1.0});
  for (double k : {0.4, 1.2}) {
    const RegularizedState st = regularize(StationaryFamily(BarrierModel::double_delta(), k, gd), 0.5);
    CHECK(st.fields.vtilde.allFinite());
    CHECK(st.fields.density.minCoeff() > 0.0);
  }
}

TEST_CASE("double-delta density derivative against analytic coefficient derivatives") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001, {-1.0, 1.0});
  for (double k : {0.4, 0.8, 1.2}) {
    for (double G : {0.1, 0.5, 0.9}) {
      const DensityDerivative d = d_dR_density(StationaryFamily(BarrierModel::double_delta(), k, g), G);
      double err = 0.0;
      for (Index i = g.node(-0.999); i <= g.node(0.999); ++i)
        err = std::max(err, std::abs(d.values(i) - dd_central_density_derivative(g.x(i), k, G)));
      CAPTURE(k);
      CAPTURE(G);
      CHECK(err <= 1e-6);
    }
  }
}

TEST_CASE("Eckart density derivative left of the barrier follows d r_f / dA") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001);
  const double k = 1.2, A = 5.0, h = 1e-4;
  const DensityDerivative d = d_dR_density(StationaryFamily(BarrierModel::eckart(), k, g), A);
  auto r = [&](double a) { return eckart_coefficients(k, a, 0.1).r_f; };
  const Complex dr = numerics::five_point_first(r(A - 2 * h), r(A - h), r(A + h), r(A + 2 * h), h);
  const Complex rf = r(A);
  for (Index i = 0; i <= g.node(-1.3); ++i) {
    const double x = g.x(i);
    const Complex phi = std::exp(I * k * x) + rf * std::exp(-I * k * x);
    const double expect = 2.0 * std::real(std::conj(phi) * dr * std::exp(-I * k * x));
    CHECK(std::abs(d.values(i) - expect) <= 1e-5);
  }
}

TEST_CASE("double-delta J closed form against quadrature") {
  CHECK(double_delta_J(0.0, 0.4, 0.8, 1.0, 1.0, 2.0) == 0.0);
  const Grid g = Grid::uniform(-1.5, 1.5, 6001, {-1.0, 1.0});
  const Index c = g.node(0.0);
  std::mt19937 rng(5);
  std::uniform_int_distribution<Index> node(0, g.size() - 1);
  std::uniform_real_distribution<double> gam(0.05, 0.95), wav(0.1, 2.0);
  for (int s = 0; s < 20; ++s) {
    const double G = gam(rng), k = wav(rng);
    const Index i = node(rng);
    const RealField d = d_dR_density(StationaryFamily(BarrierModel::double_delta(), k, g), G).values;
    const double quad = numerics::integrate(d, g, c, i);
    CAPTURE(G);
    CAPTURE(k);
    CAPTURE(g.x(i));
    CHECK(std::abs(double_delta_J(g.x(i), G, k, 1.0, 1.0, 2.0) - quad) <= 1e-7);
  }
  // J(a) with the analytic density derivative as integrand
  for (double k : {0.4, 1.2}) {
    RealField d(g.size());
    for (Index i = 0; i < g.size(); ++i) d(i) = dd_central_density_derivative(g.x(i), k, 0.3);
    CHECK(std::abs(double_delta_J(1.0, 0.3, k, 1.0, 1.0, 2.0) - numerics::integrate(d, g, c, g.node(1.0))) <= 1e-7);
  }
  CHECK_THROWS_AS(double_delta_J(0.5, 1.2, 0.8, 1.0, 1.0, 2.0), RangeError);
}

TEST_CASE("base point shifts J by a constant and leaves the window integral alone") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001);
  const StationaryFamily fam(BarrierModel::eckart(), 1.6, g);
  const RegularizedState a = regularize(fam, 3.0, 0.0);
  const RegularizedState b = regularize(fam, 3.0, 0.3);
  const double shift = a.fields.J(g.node(0.3));
  CHECK((b.fields.J - (a.fields.J.array() - shift).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  const double wa = numerics::integrate(a.fields.d_density_dR, g, g.node(-1.0), g.node(1.0));
  const double wb = numerics::integrate(b.fields.d_density_dR, g, g.node(-1.0), g.node(1.0));
  CHECK(wa == wb);
  CHECK(b.fields.theta(g.node(0.3)) == 0.0);
}

TEST_CASE("stationary derivative identities of amplitude and phase") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001);
  const BarrierModel m = BarrierModel::eckart();
  for (double A : {0.0, 5.0, 10.0}) {
    const ScatteringSolution s = solve_eckart(1.2, A, 0.1, g);
    const RealField d_amp = numerics::derivative(s.phibar, g);
    const RealField d2_amp = numerics::second_derivative(s.phibar, g);
    const RealField d_eta = numerics::derivative(s.eta, g);
    const RealField d2_eta = numerics::second_derivative(s.eta, g);
    double e1 = 0.0, e2 = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
      const double v0 = eval_v0(m, g.x(i), A);
      e1 = std::max(e1, std::abs(d2_amp(i) / s.phibar(i) - d_eta(i) * d_eta(i) - 2.0 * (v0 - s.energy)));
      e2 = std::max(e2, std::abs(d2_eta(i) + 2.0 * d_amp(i) / s.phibar(i) * d_eta(i)));
    }
    CAPTURE(A);
    CHECK(e1 <= 1e-4);
    CHECK(e2 <= 1e-4);
  }
}

TEST_CASE("parameter stencils near the edge of the analytic range") {
  const Grid g = Grid::uniform(-1.5, 1.5, 3001);
  const StationaryFamily fam(BarrierModel::eckart(), 1.2, g);
  const double r = -1.0 + 3e-5;  // inside the analytic range, central stencil does not fit
  const DensityDerivative edge = d_dR_density(fam, r);
  CHECK(edge.one_sided);
  CHECK_FALSE(d_dR_density(fam, 0.0).one_sided);
  const ParameterJet jet = parameter_jet(fam, 0.0);
  CHECK_FALSE(jet.one_sided);
  // density derivative from the jet equals the direct one
  const RealField from_jet = 2.0 * (jet.sol.phi0.conjugate().cwiseProduct(jet.dphi_dR)).real();
  CHECK((from_jet - d_dR_density(fam, 0.0).values).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("vanishing amplitude is rejected") {
  const Grid g = Grid::uniform(-1.0, 1.0, 201);
  RealField rho = g.x.cwiseAbs2();
  CHECK_THROWS_AS(theta_fields(g, rho, RealField::Zero(g.size()), 0.5), NodeError);
  rho.array() += 1.0;
  CHECK_THROWS_AS(theta_fields(g, rho, RealField::Zero(g.size()), 0.0005), StepSizeError);
}

#include <doctest.h>

#include <cmath>

#include "ffwd/errors.hpp"
#include "ffwd/numerics.hpp"
#include "ffwd/transport.hpp"

using namespace ffwd;

namespace {

const Grid kGrid = Grid::uniform(-1.5, 1.5, 3001);
const Grid kDeltaGrid = Grid::uniform(-1.5, 1.5, 3001, {-1.0, 1.0});

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("T_ff + R_ff - 1 is the deviation integral and the continuity balance") {
  struct Case {
    BarrierModel model;
    double k;
    FFSchedule sched;
    const Grid* grid;
  };
  const Case cases[] = {{BarrierModel::eckart(), 1.2, {1.0, 10.0, Profile::Cosine, 0.0}, &kGrid},
                        {BarrierModel::eckart(), 1.8, {1.0, 10.0, Profile::Cosine, 0.0}, &kGrid},
                        {BarrierModel::double_delta(), 0.4, {1.0, 1.0, Profile::Cosine, 0.0}, &kDeltaGrid},
                        {BarrierModel::double_delta(), 1.5, {1.0, 1.0, Profile::Uniform, 0.0}, &kDeltaGrid}};
  for (const Case& cs : cases) {
    const StationaryFamily fam(cs.model, cs.k, *cs.grid);
    const TransportTrace tr = transport_trace(fam, cs.sched, uniform_times(cs.sched, 8));
    CAPTURE(cs.k);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      CAPTURE(tr.times[i]);
      const double dev = tr.T_ff[i] + tr.R_ff[i] - 1.0;
      CHECK(std::abs(dev - tr.delta_u[i]) <= 1e-8);
      CHECK(tr.continuity_residual[i] <= 1e-8);
      CHECK(std::abs(tr.T_adiabatic[i] + tr.R_adiabatic[i] - 1.0) <= 1e-10);
    }
    // the drive does redistribute probability midway
    CHECK(max_abs(tr.delta_u) > 1e-4);
  }
}

TEST_CASE("currents: continuity in the flux form") {
  const StationaryFamily fam(BarrierModel::eckart(), 1.6, kGrid);
  const FFSchedule s{1.0, 10.0, Profile::Cosine, 0.0};
  const BarrierGeometry geo = fam.geometry();
  const double t = 4.0;
  const RegularizedState st = regularize(fam, R_of_t(s, t));
  const ContinuityCheck cc = continuity_check(fam, st, s, t);
  CHECK(cc.residual() <= 1e-8 * 1.6);
  // stationary current is uniform, so the net change comes from the drive part only
  const CurrentComponents a = current_decomposition(st, s, t, geo.x1);
  const CurrentComponents b = current_decomposition(st, s, t, geo.x2);
  CHECK(std::abs(a.j_ad - b.j_ad) <= 1e-8);
  CHECK(std::abs((b.j_nad - a.j_nad) - cc.lhs) <= 1e-8);
  // stationary current equals k T
  CHECK(std::abs(a.j_ad - 1.6 * stationary_transport(st.sol).T) <= 1e-8);
}

TEST_CASE("endpoint restoration") {
  const FFSchedule s{1.0, 10.0, Profile::Cosine, 0.0};
  for (double k : {1.05, 1.5, 2.0}) {
    const StationaryFamily fam(BarrierModel::eckart(), k, kGrid);
    const TransportTrace tr = transport_trace(fam, s, {0.0, s.T_FF});
    CAPTURE(k);
    CHECK(std::abs(tr.T_ff.back() - eckart_transmission_closed(k, s.R_final(), 0.1)) <= 1e-8);
    CHECK(std::abs(tr.T_ff.front() - eckart_transmission_closed(k, 0.0, 0.1)) <= 1e-8);
    CHECK(std::abs(tr.delta_u.front()) <= 1e-9);
    CHECK(std::abs(tr.delta_u.back()) <= 1e-9);
  }
  const FFSchedule sd{1.0, 1.0, Profile::Cosine, 0.0};
  const StationaryFamily dd(BarrierModel::double_delta(), 0.7, kDeltaGrid);
  const TransportTrace tr = transport_trace(dd, sd, {0.0, sd.T_FF});
  CHECK(std::abs(tr.T_ff.back() - std::norm(double_delta_coefficients(0.7, 1.0, 1.0, 1.0, 2.0).t_r)) <= 1e-8);
  CHECK(std::abs(tr.delta_u.back()) <= 1e-9);
}

TEST_CASE("base point of the phase only moves the split between T_ff and R_ff") {
  const FFSchedule s{1.0, 10.0, Profile::Cosine, 0.0};
  const StationaryFamily fam(BarrierModel::eckart(), 1.2, kGrid);
  const std::vector<double> times = uniform_times(s, 6);
  const TransportTrace a = transport_trace(fam, s, times, 0.0);
  const TransportTrace b = transport_trace(fam, s, times, 0.3);
  bool split_moved = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(a.delta_u[i] - b.delta_u[i]) <= 1e-10);
    CHECK(std::abs((a.T_ff[i] + a.R_ff[i]) - (b.T_ff[i] + b.R_ff[i])) <= 1e-10);
    split_moved = split_moved || std::abs(a.T_ff[i] - b.T_ff[i]) > 1e-6;
  }
  CHECK(split_moved);
}

TEST_CASE("free particle transports nothing extra") {
  const FFSchedule s{1.0, 2.0, Profile::Cosine, 0.0};
  const StationaryFamily fam(BarrierModel::free(), 1.1, kGrid);
  const TransportTrace tr = transport_trace(fam, s, uniform_times(s, 4));
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    CHECK(tr.T_ff[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(tr.R_ff[i]) <= 1e-12);
    CHECK(std::abs(tr.delta_u[i]) <= 1e-12);
  }
}

TEST_CASE("transport guards") {
  const FFSchedule s{1.0, 10.0, Profile::Cosine, 0.0};
  const StationaryFamily fam(BarrierModel::eckart(), 1.2, kGrid);
  const RegularizedState st = regularize(fam, 3.0);
  CHECK_THROWS_AS(transport_coefficients(st, s, 6.0, fam.geometry()), DomainError);
  CHECK_THROWS_AS(uniform_times(s, 0), DomainError);
  const std::vector<double> t = uniform_times(s, 3);
  CHECK(t.size() == 4);
  CHECK(t.back() == 10.0);
}

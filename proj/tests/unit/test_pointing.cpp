#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fsopoint/fixtures.hpp"
#include "fsopoint/pointing.hpp"
#include "helpers.hpp"

using namespace fsopoint;
using testing::kind_of;
using testing::rel_close;

namespace {

PointingSeries from_angles(const std::vector<std::pair<double, double>>& xy,
                           double range_m = 10.0) {
  PointingSeries s;
  s.link_range_m = range_m;
  for (std::size_t i = 0; i < xy.size(); ++i)
    s.samples.push_back(sample_from_lateral(
        i * 0.1, 1e-3 * xy[i].first * range_m, 1e-3 * xy[i].second * range_m,
        range_m));
  return s;
}

PointingSeries gaussian_series(std::size_t n, double mx, double sx, double my,
                               double sy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gx(mx, sx), gy(my, sy);
  std::vector<std::pair<double, double>> xy(n);
  for (auto& p : xy) p = {gx(rng), gy(rng)};
  return from_angles(xy);
}

Trajectory constant_trajectory(const Vector6& q, int n) {
  Trajectory t;
  t.dt = 0.01;
  for (int i = 0; i < n; ++i) {
    PlatformState s;
    s.t = i * 0.01;
    s.q = q;
    t.states.push_back(s);
  }
  return t;
}

}  // namespace

TEST_CASE("zero trajectory projects to a zero series") {
  const auto traj = constant_trajectory(Vector6::Zero(), 10);
  for (auto mode : {ProjectionMode::AngularOnly, ProjectionMode::AngularPlusLinear}) {
    const auto s = project_to_receiver(traj, 10.0, mode);
    REQUIRE(s.samples.size() == 10);
    for (const auto& p : s.samples) {
      CHECK(p.theta_x_mrad == 0.0);
      CHECK(p.rho_mrad == 0.0);
      CHECK(p.lateral_y_m == 0.0);
    }
  }
}

TEST_CASE("constant roll, angular only") {
  Vector6 q = Vector6::Zero();
  q[index(Dof::Roll)] = 1e-3;
  q[index(Dof::X)] = 0.5;  // ignored in this mode
  const auto s = project_to_receiver(constant_trajectory(q, 5), 10.0,
                                     ProjectionMode::AngularOnly);
  for (const auto& p : s.samples) {
    CHECK(p.lateral_x_m == doctest::Approx(0.01));
    CHECK(p.theta_x_mrad == doctest::Approx(1.0));
    CHECK(p.theta_y_mrad == 0.0);
  }
}

TEST_CASE("angular plus linear adds the perpendicular translation") {
  Vector6 q = Vector6::Zero();
  q[index(Dof::Roll)] = 1e-3;
  q[index(Dof::Pitch)] = -2e-3;
  q[index(Dof::X)] = 0.002;
  q[index(Dof::Y)] = 0.001;
  q[index(Dof::Z)] = 5.0;  // along the link, no lateral effect
  const auto s = project_to_receiver(constant_trajectory(q, 3), 10.0,
                                     ProjectionMode::AngularPlusLinear);
  const auto& p = s.samples[0];
  CHECK(p.lateral_x_m == doctest::Approx(0.012));
  CHECK(p.lateral_y_m == doctest::Approx(-0.019));
  CHECK(p.theta_x_mrad == doctest::Approx(1.2));
  CHECK(p.theta_y_mrad == doctest::Approx(-1.9));
}

TEST_CASE("projection rejects a non-positive range") {
  const auto traj = constant_trajectory(Vector6::Zero(), 3);
  CHECK(kind_of([&] { project_to_receiver(traj, 0.0, ProjectionMode::AngularOnly); }) ==
        ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { project_to_receiver(traj, -5.0, ProjectionMode::AngularOnly); }) ==
        ErrorKind::InvalidParameter);
}

TEST_CASE("sample invariants: rho and small-angle lateral") {
  const auto s = gaussian_series(1000, 1.0, 3.0, -2.0, 1.5, 7);
  for (const auto& p : s.samples) {
    const double r2 = p.theta_x_mrad * p.theta_x_mrad + p.theta_y_mrad * p.theta_y_mrad;
    CHECK(rel_close(p.rho_mrad * p.rho_mrad, r2, 1e-9));
    CHECK(rel_close(p.lateral_x_m, 1e-3 * p.theta_x_mrad * s.link_range_m, 1e-9));
    CHECK(rel_close(p.lateral_y_m, 1e-3 * p.theta_y_mrad * s.link_range_m, 1e-9));
  }
}

TEST_CASE("lateral breakdown separates rotation from translation") {
  Trajectory t;
  for (int i = 0; i < 400; ++i) {
    PlatformState s;
    s.t = i * 0.01;
    s.q[index(Dof::Roll)] = 1e-3 * std::sin(0.3 * i);
    s.q[index(Dof::X)] = 1e-4 * std::sin(0.3 * i) + 7.0;  // offset is removed
    t.states.push_back(s);
  }
  const auto b = lateral_breakdown(t, 10.0);
  CHECK(b.ratio == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(b.angular_rms_m == doctest::Approx(0.01 / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("constant series statistics") {
  const auto s = from_angles({{0.25, -1.0}, {0.25, -1.0}, {0.25, -1.0}});
  const auto st = stats(s);
  CHECK(st.mu_theta_x == doctest::Approx(0.25));
  CHECK(st.sigma_theta_x == doctest::Approx(0.0));
  CHECK(st.n == 3);
}

TEST_CASE("two-sample statistics by hand") {
  const auto st = stats(from_angles({{0.0, 0.0}, {2.0, 0.0}}));
  CHECK(st.mu_theta_x == doctest::Approx(1.0));
  CHECK(st.sigma_theta_x == doctest::Approx(std::sqrt(2.0)));
  CHECK(st.mu_rho == doctest::Approx(1.0));
}

TEST_CASE("statistics need two samples") {
  CHECK(kind_of([] { stats(from_angles({{1.0, 1.0}})); }) ==
        ErrorKind::InsufficientData);
  CHECK(kind_of([] { stats(PointingSeries{}); }) == ErrorKind::InsufficientData);
  const std::vector<double> one{1.0};
  CHECK(kind_of([&] { fit_gaussian(one); }) == ErrorKind::InsufficientData);
}

TEST_CASE("summary-matched fixture reproduces the drone statistics") {
  const auto fx = make_matched_fixture();
  const auto st = stats(fx.series);
  CHECK(st.n == 150);
  CHECK(st.mu_theta_x == doctest::Approx(2.8749).epsilon(1e-9));
  CHECK(st.mu_theta_y == doctest::Approx(1.2746).epsilon(1e-9));
  CHECK(st.sigma_theta_x == doctest::Approx(3.2768).epsilon(1e-9));
  CHECK(st.sigma_theta_y == doctest::Approx(1.5535).epsilon(1e-9));
  CHECK(st.mu_lateral_mm == doctest::Approx(12.97).epsilon(1e-9));
  CHECK(st.sigma_lateral_mm == doctest::Approx(6.2563).epsilon(1e-9));
  // Independent check of the implied distance: mean |theta| * D = 12.97 mm.
  CHECK(st.mu_rho * fx.wall_distance_m == doctest::Approx(12.97).epsilon(1e-9));
  CHECK(fx.wall_distance_m == doctest::Approx(3.0038).epsilon(1e-4));
  CHECK(fx.series.samples.back().t == doctest::Approx(149.0 / 30.0));
}

TEST_CASE("gaussian fit examples") {
  const auto s = gaussian_series(100000, 2.87, 3.28, 0.0, 1.0, 42);
  const auto f = fit(s);
  CHECK(f.gaussian_x.mean == doctest::Approx(2.87).epsilon(0.02));
  CHECK(f.gaussian_x.std == doctest::Approx(3.28).epsilon(0.02));

  const std::vector<double> same(10, 4.0);
  const auto g = fit_gaussian(same);
  CHECK(g.std == 0.0);
  CHECK(g.degenerate);

  const std::vector<double> sym{-1.7, 1.7, -1.7, 1.7};
  CHECK(fit_gaussian(sym).mean == 0.0);
  CHECK_FALSE(fit_gaussian(sym).degenerate);
}

TEST_CASE("rayleigh fit examples") {
  const std::vector<double> same(7, 3.0);
  CHECK(fit_rayleigh(same) == doctest::Approx(3.0 / std::sqrt(2.0)));

  const auto s = gaussian_series(100000, 0.0, 3.0, 0.0, 3.0, 9);
  const auto f = fit(s);
  CHECK(f.rayleigh_sigma == doctest::Approx(3.0).epsilon(0.02));
  CHECK(f.rayleigh_ks < 0.01);

  // Moment identities of the fitted distribution against the sample.
  const auto st = stats(s);
  CHECK(f.rayleigh_sigma * std::sqrt(std::numbers::pi / 2.0) ==
        doctest::Approx(st.mu_rho).epsilon(0.03));
  CHECK(f.rayleigh_sigma * std::sqrt(2.0 - std::numbers::pi / 2.0) ==
        doctest::Approx(st.sigma_rho).epsilon(0.03));

  const std::vector<double> bad{1.0, -0.5, 2.0};
  CHECK(kind_of([&] { fit_rayleigh(bad); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("rayleigh KS statistic is large for a mismatched scale") {
  const auto s = gaussian_series(5000, 0.0, 1.0, 0.0, 1.0, 3);
  std::vector<double> rho;
  for (const auto& p : s.samples) rho.push_back(p.rho_mrad);
  CHECK(rayleigh_ks_statistic(rho, 1.0) < 0.03);
  CHECK(rayleigh_ks_statistic(rho, 3.0) > 0.3);
}

TEST_CASE("isometry: rotating the samples keeps magnitude statistics") {
  const auto s = gaussian_series(2000, 1.0, 2.0, -0.5, 0.7, 5);
  const auto base = stats(s);
  const auto base_fit = fit(s);
  for (double angle : {0.3, 1.0, 2.5, -4.0}) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : s.samples)
      xy.push_back({std::cos(angle) * p.theta_x_mrad - std::sin(angle) * p.theta_y_mrad,
                    std::sin(angle) * p.theta_x_mrad + std::cos(angle) * p.theta_y_mrad});
    const auto r = from_angles(xy);
    const auto st = stats(r);
    CHECK(rel_close(st.mu_rho, base.mu_rho, 1e-9));
    CHECK(rel_close(st.sigma_rho, base.sigma_rho, 1e-9));
    CHECK(rel_close(fit(r).rayleigh_sigma, base_fit.rayleigh_sigma, 1e-9));
  }
}

TEST_CASE("scale equivariance") {
  const auto s = gaussian_series(1000, 1.0, 2.0, -0.5, 0.7, 6);
  const auto a = stats(s);
  const auto fa = fit(s);
  for (double k : {0.1, 3.0, 250.0}) {
    const auto scaled = scale_series(s, k);
    const auto b = stats(scaled);
    const auto fb = fit(scaled);
    CHECK(rel_close(b.mu_theta_x, k * a.mu_theta_x, 1e-12));
    CHECK(rel_close(b.mu_theta_y, k * a.mu_theta_y, 1e-12));
    CHECK(rel_close(b.sigma_theta_x, k * a.sigma_theta_x, 1e-12));
    CHECK(rel_close(b.sigma_theta_y, k * a.sigma_theta_y, 1e-12));
    CHECK(rel_close(b.mu_rho, k * a.mu_rho, 1e-12));
    CHECK(rel_close(b.sigma_rho, k * a.sigma_rho, 1e-12));
    CHECK(rel_close(fb.gaussian_x.std, k * fa.gaussian_x.std, 1e-12));
    CHECK(rel_close(fb.rayleigh_sigma, k * fa.rayleigh_sigma, 1e-12));
  }
}

TEST_CASE("fit error shrinks with sample size") {
  double prev_g = 1e9, prev_r = 1e9;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double err_g = 0.0, err_r = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = fit(gaussian_series(n, 0.0, 3.0, 0.0, 3.0, 100 + seed));
      err_g += std::abs(f.gaussian_x.std - 3.0);
      err_r += std::abs(f.rayleigh_sigma - 3.0);
    }
    CHECK(err_g < prev_g);
    CHECK(err_r < prev_r);
    prev_g = err_g;
    prev_r = err_r;
  }
}

TEST_CASE("prediction error") {
  CHECK(prediction_error(12.97, 11.5) == doctest::Approx(11.334).epsilon(1e-4));
  CHECK(prediction_error(4.2, 4.2) == 0.0);
  CHECK(prediction_error(10.0, 5.0) == doctest::Approx(50.0));
  CHECK(kind_of([] { prediction_error(0.0, 1.0); }) == ErrorKind::InvalidParameter);
}

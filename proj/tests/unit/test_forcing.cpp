#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fsopoint/forcing.hpp"
#include "helpers.hpp"

using namespace fsopoint;
using testing::kind_of;

namespace {

// Time-averaged |F| and per-axis force std over [0, T] on a fixed grid.
struct ForceStats {
  double mean_magnitude = 0.0;
  Vector3 std = Vector3::Zero();
};

ForceStats force_stats(const WindParams& w, double T, double dt) {
  const WindField field(w, T);
  const int n = static_cast<int>(T / dt);
  Vector3 sum = Vector3::Zero(), sum_sq = Vector3::Zero();
  ForceStats out;
  for (int i = 0; i < n; ++i) {
    const Vector3 f = wind_force(w, field.velocity(i * dt));
    out.mean_magnitude += f.norm();
    sum += f;
    sum_sq += f.cwiseProduct(f);
  }
  out.mean_magnitude /= n;
  const Vector3 mean = sum / n;
  out.std = (sum_sq / n - mean.cwiseProduct(mean)).cwiseMax(0.0).cwiseSqrt();
  return out;
}

}  // namespace

TEST_CASE("hover thrust equals the weight") {
  PropellerParams p;
  const Vector3 f = propeller_force_mean(p);
  CHECK(f.norm() == doctest::Approx(0.7 * 9.81));
  CHECK(f[1] == doctest::Approx(6.867));
  CHECK(f[0] == 0.0);
  CHECK(f[2] == 0.0);
}

TEST_CASE("no thrust without acceleration, speed or hover") {
  PropellerParams p;
  p.hover = false;
  CHECK(propeller_force_mean(p).isZero(0.0));
}

TEST_CASE("thrust-axis term m*a - b*v^2") {
  PropellerParams p;
  p.hover = false;
  p.a_hap_mps2 = {0.0, 2.0, 0.0};
  p.b_drag = 0.01;
  p.v_hap_mps = 3.0;
  CHECK(propeller_force_mean(p)[1] == doctest::Approx(1.31));
}

TEST_CASE("propeller parameter validation") {
  PropellerParams p;
  p.ripple_fraction = 1.5;
  CHECK(kind_of([&] { propeller_forcing(p); }) == ErrorKind::InvalidParameter);
  p = {};
  p.blade_pass_hz = 0.0;
  CHECK(kind_of([&] { propeller_forcing(p); }) == ErrorKind::InvalidParameter);
  p = {};
  p.m_hap_kg = -1.0;
  CHECK(kind_of([&] { propeller_forcing(p); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("zero ripple gives a constant force") {
  PropellerParams p;
  p.ripple_fraction = 0.0;
  const auto f = propeller_forcing(p);
  for (double t : {0.0, 0.0013, 0.25, 3.7}) CHECK(f(t) == f(0.0));
}

TEST_CASE("ripple is periodic at the blade-pass frequency") {
  const PropellerParams p;
  const auto f = propeller_forcing(p);
  for (double t : {0.0, 0.00123, 0.0377, 1.5}) {
    const Vector6 a = f(t), b = f(t + 1.0 / p.blade_pass_hz);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hover ripple peak-to-peak") {
  const PropellerParams p;
  const auto f = propeller_forcing(p);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i < 1000; ++i) {
    const double v = f(i * 1e-5)[1];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo == doctest::Approx(0.1 * 6.867).epsilon(1e-4));
  // Torque rows carry ripple * arm, zero mean.
  CHECK(f(0.0025)[3] == doctest::Approx(0.05 * 6.867 * 0.1));
  CHECK(f.nominal().tail<3>().isZero(0.0));
}

TEST_CASE("scenario names round trip") {
  for (auto s : {WindScenario::Calm, WindScenario::Typical, WindScenario::Turbulent,
                 WindScenario::UnidirectionalX, WindScenario::UnidirectionalY,
                 WindScenario::UnidirectionalZ})
    CHECK(parse_wind_scenario(to_string(s)) == s);
  CHECK_FALSE(parse_wind_scenario("hurricane").has_value());
  CHECK(parse_drag_mode("quadratic") == DragMode::Quadratic);
  CHECK_FALSE(parse_drag_mode("cubic").has_value());
  CHECK(scenario_mean_speed(WindScenario::Calm) < 1.0);
  CHECK(scenario_mean_speed(WindScenario::Typical) == 5.0);
  CHECK(scenario_mean_speed(WindScenario::Turbulent) == 30.0);
}

TEST_CASE("wind parameter validation") {
  WindParams w;
  w.rho_kgm3 = 1.2;  // sea level, not stratospheric
  CHECK(kind_of([&] { WindField(w, 1.0); }) == ErrorKind::InvalidParameter);
  w = {};
  w.gust_corner_hz = 0.0;
  CHECK(kind_of([&] { WindField(w, 1.0); }) == ErrorKind::InvalidParameter);
  w = {};
  w.area_m2 = {1.0, -1.0, 1.0};
  CHECK(kind_of([&] { wind_forcing(w, 1.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("no turbulence gives a constant wind of the mean speed") {
  WindParams w;
  w.turbulence_intensity = 0.0;
  const WindField field(w, 10.0);
  for (double t : {0.0, 0.37, 5.0, 9.99}) {
    CHECK(field.velocity(t).norm() == doctest::Approx(5.0));
    CHECK(field.velocity(t) == field.velocity(0.0));
  }
  CHECK(wind_speed_series(w, 3.0).norm() == doctest::Approx(5.0));
}

TEST_CASE("unidirectional scenarios stay on their axis") {
  for (auto [s, axis] : {std::pair{WindScenario::UnidirectionalX, 0},
                         std::pair{WindScenario::UnidirectionalY, 1},
                         std::pair{WindScenario::UnidirectionalZ, 2}}) {
    WindParams w;
    w.scenario = s;
    w.seed = 5;
    const auto f = wind_forcing(w, 20.0);
    const WindField field(w, 20.0);
    for (int i = 0; i < 2000; ++i) {
      const double t = i * 0.01;
      const Vector3 v = field.velocity(t);
      const Vector6 F = f(t);
      for (int k = 0; k < 3; ++k) {
        if (k == axis) continue;
        CHECK(v[k] == 0.0);
        CHECK(F[k] == 0.0);
      }
    }
  }
}

TEST_CASE("typical scenario averages 5 m/s over 100 s") {
  WindParams w;
  w.seed = 3;
  const WindField field(w, 100.0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += field.velocity(i * 1e-3).norm();
  CHECK(sum / n == doctest::Approx(5.0).epsilon(0.1));
}

TEST_CASE("gust statistics follow the first-order model") {
  WindParams w;
  w.scenario = WindScenario::UnidirectionalX;
  w.gust_step_s = 0.01;
  w.seed = 11;
  const double T = 2000.0;
  const WindField field(w, T);
  const int n = static_cast<int>(T / w.gust_step_s);
  double sum = 0.0, sum_sq = 0.0, lag = 0.0;
  double prev = field.velocity(0.0)[0] - 5.0;
  for (int i = 0; i < n; ++i) {
    const double g = field.velocity(i * w.gust_step_s)[0] - 5.0;
    sum += g;
    sum_sq += g * g;
    if (i > 0) lag += g * prev;
    prev = g;
  }
  const double var = sum_sq / n - (sum / n) * (sum / n);
  CHECK(std::sqrt(var) == doctest::Approx(0.2 * 5.0).epsilon(0.05));
  // Lag-one correlation of an exactly discretized OU process.
  const double decay = std::exp(-2.0 * std::numbers::pi * w.gust_corner_hz *
                                w.gust_step_s);
  CHECK(lag / (n - 1) / var == doctest::Approx(decay).epsilon(0.02));
}

TEST_CASE("wind field refuses times past its horizon") {
  const WindField field(WindParams{}, 1.0);
  CHECK_NOTHROW(field.velocity(1.0));
  CHECK(kind_of([&] { field.velocity(50.0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { field.velocity(-0.1); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("longer horizons extend the same series") {
  WindParams w;
  w.seed = 21;
  const WindField short_field(w, 5.0), long_field(w, 50.0);
  for (double t : {0.0, 1.234, 4.9}) CHECK(short_field.velocity(t) == long_field.velocity(t));
}

TEST_CASE("wind force examples") {
  WindParams w;
  w.rho_kgm3 = 0.2;
  const Vector3 v{5.0, 0.0, 0.0};
  CHECK(wind_force(w, v).isApprox(Vector3{1.0, 0.0, 0.0}));
  w.mode = DragMode::Quadratic;
  CHECK(wind_force(w, v).isApprox(Vector3{2.5, 0.0, 0.0}));
  CHECK(wind_force(w, Vector3::Zero()).isZero(0.0));
  w.mode = DragMode::AsGiven;
  CHECK(wind_force(w, Vector3::Zero()).isZero(0.0));
}

TEST_CASE("drag homogeneity: degree 1 as given, degree 2 quadratic") {
  WindParams w;
  w.area_m2 = {2.0, 3.0, 0.5};
  const Vector3 v{1.5, -2.0, 0.7};
  for (double a : {0.5, 2.0, 7.5}) {
    w.mode = DragMode::AsGiven;
    CHECK(wind_force(w, a * v).isApprox(a * wind_force(w, v), 1e-14));
    w.mode = DragMode::Quadratic;
    CHECK(wind_force(w, a * v).isApprox(a * a * wind_force(w, v), 1e-14));
  }
}

TEST_CASE("wind torque is the pressure-centre offset crossed with the force") {
  WindParams w;
  w.pressure_offset_m = {0.1, 2.0, -0.3};
  w.seed = 4;
  const auto f = wind_forcing(w, 2.0);
  for (double t : {0.0, 0.5, 1.7}) {
    const Vector6 F = f(t);
    const Vector3 force = F.head<3>();
    const Vector3 expected{w.pressure_offset_m[1] * force[2] - w.pressure_offset_m[2] * force[1],
                           w.pressure_offset_m[2] * force[0] - w.pressure_offset_m[0] * force[2],
                           w.pressure_offset_m[0] * force[1] - w.pressure_offset_m[1] * force[0]};
    CHECK(Vector3(F.tail<3>()).isApprox(expected, 1e-14));
  }
}

TEST_CASE("seeded wind forcing is reproducible") {
  WindParams w;
  w.seed = 1234;
  const auto a = wind_forcing(w, 10.0);
  const auto b = wind_forcing(w, 10.0);
  CHECK(a.seed() == 1234u);
  for (int i = 0; i < 1000; ++i) CHECK(a(i * 0.01) == b(i * 0.01));
  w.seed = 1235;
  CHECK(wind_forcing(w, 10.0)(1.0) != a(1.0));
}

TEST_CASE("zero area gives zero forcing") {
  WindParams w;
  w.area_m2 = Vector3::Zero();
  const auto f = wind_forcing(w, 5.0);
  for (double t : {0.0, 2.5, 4.9}) CHECK(f(t).isZero(0.0));
}

TEST_CASE("calm gusts are weaker than turbulent ones") {
  WindParams calm, turbulent;
  calm.scenario = WindScenario::Calm;
  turbulent.scenario = WindScenario::Turbulent;
  calm.seed = turbulent.seed = 8;
  const auto c = force_stats(calm, 60.0, 0.01);
  const auto t = force_stats(turbulent, 60.0, 0.01);
  for (int k = 0; k < 3; ++k) CHECK(c.std[k] < t.std[k]);
}

TEST_CASE("time-averaged wind force grows calm -> typical -> turbulent") {
  double avg[3] = {0.0, 0.0, 0.0};
  const WindScenario order[3] = {WindScenario::Calm, WindScenario::Typical,
                                 WindScenario::Turbulent};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int k = 0; k < 3; ++k) {
      WindParams w;
      w.scenario = order[k];
      w.seed = seed;
      avg[k] += force_stats(w, 20.0, 0.01).mean_magnitude / 20.0;
    }
  }
  CHECK(avg[0] < avg[1]);
  CHECK(avg[1] < avg[2]);
}

TEST_CASE("forcing composition") {
  const auto a = ForcingFunction::constant(Vector6::Constant(2.0));
  const auto b = propeller_forcing(PropellerParams{});
  const auto sum = a + b;
  CHECK(sum(0.0123) == a(0.0123) + b(0.0123));
  CHECK(sum.nominal() == a.nominal() + b.nominal());
  CHECK(a.scaled(-2.0)(1.0) == Vector6::Constant(-4.0));
  CHECK(ForcingFunction()(3.0).isZero(0.0));
}

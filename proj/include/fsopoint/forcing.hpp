#pragma once

// Generalized force histories F(t) for the 6-DOF platform: propeller thrust
// with blade-pass ripple, and stratospheric wind with first-order gusts.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsopoint/types.hpp"

namespace fsopoint {

/// Immutable t -> 6-vector rule (N on translational rows, N*m on rotational
/// rows). Copies share the underlying rule.
///
/// `nominal()` is the time-independent part of the forcing (mean thrust, force
/// at the mean wind speed). It is what the platform settles to under static
/// loading and is used to start integrations at equilibrium.
class ForcingFunction {
 public:
  using Rule = std::function<Vector6(double)>;

  ForcingFunction();
  explicit ForcingFunction(Rule rule, const Vector6& nominal = Vector6::Zero(),
                           std::optional<std::uint64_t> seed = std::nullopt);

  static ForcingFunction constant(const Vector6& value);

  Vector6 operator()(double t) const { return (*rule_)(t); }

  const Vector6& nominal() const { return nominal_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  ForcingFunction scaled(double factor) const;
  friend ForcingFunction operator+(const ForcingFunction& a,
                                   const ForcingFunction& b);

 private:
  std::shared_ptr<const Rule> rule_;
  Vector6 nominal_;
  std::optional<std::uint64_t> seed_;
};

// ---------------------------------------------------------------------------
// Propeller
// ---------------------------------------------------------------------------

/// Thrust acts along +y (against gravity). Ripple torque is applied to all
/// three rotational rows.
struct PropellerParams {
  double m_hap_kg = 0.7;
  double b_drag = 0.0;       ///< N*s^2/m^2
  double v_hap_mps = 0.0;    ///< platform speed
  Vector3 a_hap_mps2 = Vector3::Zero();
  double ripple_fraction = 0.05;
  double blade_pass_hz = 100.0;
  double torque_arm_m = 0.1;
  bool hover = true;
};

void validate(const PropellerParams& p);

/// m*a - b*v^2 along the thrust axis, plus m*g lift in hover.
Vector3 propeller_force_mean(const PropellerParams& p);

ForcingFunction propeller_forcing(const PropellerParams& p);

// ---------------------------------------------------------------------------
// Wind
// ---------------------------------------------------------------------------

enum class WindScenario {
  Calm,
  Typical,
  Turbulent,
  UnidirectionalX,
  UnidirectionalY,
  UnidirectionalZ,
};

enum class DragMode {
  AsGiven,    ///< F = A * rho * v, component-wise
  Quadratic,  ///< F = 0.5 * A * rho * |v| * v
};

std::string_view to_string(WindScenario s);
std::string_view to_string(DragMode m);
std::optional<WindScenario> parse_wind_scenario(std::string_view text);
std::optional<DragMode> parse_drag_mode(std::string_view text);

/// Default mean speed of a scenario in m/s: calm 0.5, typical 5, turbulent 30,
/// unidirectional 5.
double scenario_mean_speed(WindScenario s);

/// Unit direction of the mean wind. Resultant scenarios blow along
/// (1,1,1)/sqrt(3); unidirectional ones along their axis (z is the link axis,
/// y the gravity axis).
Vector3 scenario_direction(WindScenario s);

struct WindParams {
  Vector3 area_m2 = Vector3::Constant(1.0);  ///< projected area per axis
  double rho_kgm3 = 0.088;
  WindScenario scenario = WindScenario::Typical;
  std::optional<double> mean_speed_mps;  ///< overrides the scenario default
  double gust_corner_hz = 2.0;
  double turbulence_intensity = 0.2;
  Vector3 pressure_offset_m = Vector3::Constant(0.05);
  DragMode mode = DragMode::AsGiven;
  double gust_step_s = 0.01;
  std::uint64_t seed = 0;

  double mean_speed() const {
    return mean_speed_mps ? *mean_speed_mps : scenario_mean_speed(scenario);
  }
};

void validate(const WindParams& w);

/// Materialized wind velocity over [0, horizon]. Gusts are an exactly
/// discretized first-order (Ornstein-Uhlenbeck) process per axis on a grid of
/// `gust_step_s`, linearly interpolated in between. Each axis draws from its
/// own seeded stream, so a longer horizon only extends the series.
class WindField {
 public:
  WindField(const WindParams& params, double horizon_s);

  Vector3 velocity(double t) const;
  double horizon() const { return horizon_; }

 private:
  Vector3 mean_;
  double step_;
  double horizon_;
  std::vector<Vector3> gust_;
};

/// Convenience wrapper: the wind velocity at `t` for a field covering [0, t].
Vector3 wind_speed_series(const WindParams& w, double t);

Vector3 wind_force(const WindParams& w, const Vector3& wind_velocity);

/// Force rows from `wind_force`; torque rows are r x F with r the pressure
/// centre offset from the centre of mass.
ForcingFunction wind_forcing(const WindParams& w, double horizon_s);

}  // namespace fsopoint

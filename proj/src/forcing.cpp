#include "fsopoint/forcing.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

constexpr int kThrustAxis = 1;  // y, against gravity

Vector6 stack(const Vector3& force, const Vector3& torque) {
  Vector6 out;
  out << force, torque;
  return out;
}

bool finite_vec(const Vector3& v) { return v.allFinite(); }

}  // namespace

ForcingFunction::ForcingFunction()
    : ForcingFunction([](double) -> Vector6 { return Vector6::Zero(); }) {}

ForcingFunction::ForcingFunction(Rule rule, const Vector6& nominal,
                                 std::optional<std::uint64_t> seed)
    : rule_(std::make_shared<const Rule>(std::move(rule))),
      nominal_(nominal),
      seed_(seed) {}

ForcingFunction ForcingFunction::constant(const Vector6& value) {
  return ForcingFunction([value](double) -> Vector6 { return value; }, value);
}

ForcingFunction ForcingFunction::scaled(double factor) const {
  auto inner = rule_;
  return ForcingFunction(
      [inner, factor](double t) -> Vector6 { return factor * (*inner)(t); },
      factor * nominal_, seed_);
}

ForcingFunction operator+(const ForcingFunction& a, const ForcingFunction& b) {
  auto ra = a.rule_;
  auto rb = b.rule_;
  return ForcingFunction(
      [ra, rb](double t) -> Vector6 { return (*ra)(t) + (*rb)(t); },
      a.nominal_ + b.nominal_, a.seed_ ? a.seed_ : b.seed_);
}

// ---------------------------------------------------------------------------
// Propeller
// ---------------------------------------------------------------------------

void validate(const PropellerParams& p) {
  if (!(p.m_hap_kg > 0.0)) throw_invalid("m_hap_kg", "must be > 0");
  if (!(p.ripple_fraction >= 0.0 && p.ripple_fraction <= 1.0))
    throw_invalid("ripple_fraction", "must be in [0, 1]");
  if (!(p.blade_pass_hz > 0.0)) throw_invalid("blade_pass_hz", "must be > 0");
  if (!std::isfinite(p.b_drag)) throw_invalid("b_drag", "must be finite");
  if (!std::isfinite(p.v_hap_mps)) throw_invalid("v_hap_mps", "must be finite");
  if (!finite_vec(p.a_hap_mps2)) throw_invalid("a_hap_mps2", "must be finite");
  if (!std::isfinite(p.torque_arm_m))
    throw_invalid("torque_arm_m", "must be finite");
}

Vector3 propeller_force_mean(const PropellerParams& p) {
  validate(p);
  Vector3 force = p.m_hap_kg * p.a_hap_mps2;
  force[kThrustAxis] -= p.b_drag * p.v_hap_mps * p.v_hap_mps;
  if (p.hover) force[kThrustAxis] += p.m_hap_kg * kGravity;
  return force;
}

ForcingFunction propeller_forcing(const PropellerParams& p) {
  const Vector3 mean = propeller_force_mean(p);
  const double amplitude = p.ripple_fraction * mean.norm();
  const double omega = 2.0 * std::numbers::pi * p.blade_pass_hz;
  const double arm = p.torque_arm_m;
  const Vector6 nominal = stack(mean, Vector3::Zero());
  return ForcingFunction(
      [nominal, amplitude, omega, arm](double t) -> Vector6 {
        const double ripple = amplitude * std::sin(omega * t);
        Vector6 f = nominal;
        f[kThrustAxis] += ripple;
        f.tail<3>().setConstant(ripple * arm);
        return f;
      },
      nominal);
}

// ---------------------------------------------------------------------------
// Wind
// ---------------------------------------------------------------------------

std::string_view to_string(WindScenario s) {
  switch (s) {
    case WindScenario::Calm: return "calm";
    case WindScenario::Typical: return "typical";
    case WindScenario::Turbulent: return "turbulent";
    case WindScenario::UnidirectionalX: return "unidirectional-x";
    case WindScenario::UnidirectionalY: return "unidirectional-y";
    case WindScenario::UnidirectionalZ: return "unidirectional-z";
  }
  return "?";
}

std::string_view to_string(DragMode m) {
  return m == DragMode::AsGiven ? "as-given" : "quadratic";
}

std::optional<WindScenario> parse_wind_scenario(std::string_view text) {
  for (auto s : {WindScenario::Calm, WindScenario::Typical,
                 WindScenario::Turbulent, WindScenario::UnidirectionalX,
                 WindScenario::UnidirectionalY, WindScenario::UnidirectionalZ}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<DragMode> parse_drag_mode(std::string_view text) {
  if (text == "as-given") return DragMode::AsGiven;
  if (text == "quadratic") return DragMode::Quadratic;
  return std::nullopt;
}

double scenario_mean_speed(WindScenario s) {
  switch (s) {
    case WindScenario::Calm: return 0.5;
    case WindScenario::Turbulent: return 30.0;
    default: return 5.0;
  }
}

Vector3 scenario_direction(WindScenario s) {
  switch (s) {
    case WindScenario::UnidirectionalX: return Vector3::UnitX();
    case WindScenario::UnidirectionalY: return Vector3::UnitY();
    case WindScenario::UnidirectionalZ: return Vector3::UnitZ();
    default: return Vector3::Ones().normalized();
  }
}

void validate(const WindParams& w) {
  if (!(w.area_m2.minCoeff() >= 0.0) || !finite_vec(w.area_m2))
    throw_invalid("area_m2", "must be >= 0");
  if (!(w.rho_kgm3 > 0.0 && w.rho_kgm3 <= 0.2))
    throw_invalid("rho_kgm3", "stratospheric density must be in (0, 0.2]");
  if (!(w.mean_speed() >= 0.0) || !std::isfinite(w.mean_speed()))
    throw_invalid("mean_speed_mps", "must be >= 0");
  if (!(w.gust_corner_hz > 0.0)) throw_invalid("gust_corner_hz", "must be > 0");
  if (!(w.turbulence_intensity >= 0.0))
    throw_invalid("turbulence_intensity", "must be >= 0");
  if (!(w.gust_step_s > 0.0)) throw_invalid("gust_step_s", "must be > 0");
  if (!finite_vec(w.pressure_offset_m))
    throw_invalid("pressure_offset_m", "must be finite");
}

WindField::WindField(const WindParams& params, double horizon_s)
    : mean_(params.mean_speed() * scenario_direction(params.scenario)),
      step_(params.gust_step_s),
      horizon_(horizon_s) {
  validate(params);
  if (!(horizon_s >= 0.0) || !std::isfinite(horizon_s))
    throw_invalid("horizon_s", "must be >= 0");

  // Two spare nodes so RK4 stages at the horizon stay inside the grid.
  const auto nodes =
      static_cast<std::size_t>(std::ceil(horizon_s / step_)) + 2;
  gust_.assign(nodes, Vector3::Zero());

  const double sigma = params.turbulence_intensity * params.mean_speed();
  if (sigma == 0.0) return;

  const double decay =
      std::exp(-2.0 * std::numbers::pi * params.gust_corner_hz * step_);
  const double drive = sigma * std::sqrt(1.0 - decay * decay);

  const Vector3 dir = scenario_direction(params.scenario);
  for (int axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) continue;  // unidirectional: off-axis stays zero
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                      static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(axis)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    double g = sigma * normal(rng);  // stationary start
    for (auto& node : gust_) {
      node[axis] = g;
      g = decay * g + drive * normal(rng);
    }
  }
}

Vector3 WindField::velocity(double t) const {
  if (!(t >= 0.0)) throw_invalid("t", "wind field is defined for t >= 0");
  const double pos = t / step_;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= gust_.size())
    throw Error(ErrorKind::InvalidParameter,
                "t: " + std::to_string(t) + " s is beyond the wind horizon of " +
                    std::to_string(horizon_) + " s");
  const double frac = pos - static_cast<double>(i);
  return mean_ + (1.0 - frac) * gust_[i] + frac * gust_[i + 1];
}

Vector3 wind_speed_series(const WindParams& w, double t) {
  return WindField(w, t).velocity(t);
}

Vector3 wind_force(const WindParams& w, const Vector3& v) {
  const Vector3 area_rho = w.area_m2 * w.rho_kgm3;
  switch (w.mode) {
    case DragMode::AsGiven:
      return area_rho.cwiseProduct(v);
    case DragMode::Quadratic:
      return 0.5 * v.norm() * area_rho.cwiseProduct(v);
  }
  throw_invalid("mode", "unknown drag mode");
}

ForcingFunction wind_forcing(const WindParams& w, double horizon_s) {
  auto field = std::make_shared<const WindField>(w, horizon_s);
  const Vector3 offset = w.pressure_offset_m;
  auto generalized = [w, offset](const Vector3& v) -> Vector6 {
    const Vector3 force = wind_force(w, v);
    return stack(force, offset.cross(force));
  };
  const Vector6 nominal =
      generalized(w.mean_speed() * scenario_direction(w.scenario));
  return ForcingFunction(
      [field, generalized](double t) -> Vector6 {
        return generalized(field->velocity(t));
      },
      nominal, w.seed);
}

}  // namespace fsopoint

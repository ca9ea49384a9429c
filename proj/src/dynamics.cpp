#include "fsopoint/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

bool is_diagonal(const Matrix6& m) {
  return (m - Matrix6(m.diagonal().asDiagonal())).isZero(0.0);
}

std::string time_str(double t) {
  std::ostringstream os;
  os.precision(9);
  os << t;
  return os.str();
}

// First-order form of the equations of motion with the inverse mass cached.
class StateDerivative {
 public:
  StateDerivative(const SystemMatrices& system, const ForcingFunction& forcing)
      : system_(system), forcing_(forcing) {
    if (!is_diagonal(system.mass))
      throw Error(ErrorKind::Unsupported, "mass matrix must be diagonal");
    inv_mass_ = system.mass.diagonal().cwiseInverse();
  }

  // Returns (qdot, qddot).
  std::pair<Vector6, Vector6> operator()(double t, const Vector6& q,
                                         const Vector6& qdot) const {
    const Vector6 f = forcing_(t);
    if (!f.allFinite())
      throw Error(ErrorKind::Integration,
                  "non-finite forcing at t = " + time_str(t) + " s");
    const Vector6 rhs = system_.input * f - system_.damping * qdot -
                        system_.stiffness * q;
    return {qdot, inv_mass_.cwiseProduct(rhs)};
  }

 private:
  const SystemMatrices& system_;
  const ForcingFunction& forcing_;
  Vector6 inv_mass_;
};

PlatformState step(const StateDerivative& deriv, const PlatformState& s,
                   double dt) {
  const double h2 = 0.5 * dt;
  const auto [k1q, k1v] = deriv(s.t, s.q, s.qdot);
  const auto [k2q, k2v] = deriv(s.t + h2, s.q + h2 * k1q, s.qdot + h2 * k1v);
  const auto [k3q, k3v] = deriv(s.t + h2, s.q + h2 * k2q, s.qdot + h2 * k2v);
  const auto [k4q, k4v] = deriv(s.t + dt, s.q + dt * k3q, s.qdot + dt * k3v);

  PlatformState next;
  next.t = s.t + dt;
  next.q = s.q + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  next.qdot = s.qdot + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return next;
}

}  // namespace

void validate(const PlatformParams& p) {
  if (!(p.mass_kg > 0.0) || !std::isfinite(p.mass_kg))
    throw_invalid("mass_kg", "must be > 0");
  if (!(p.inertia_kgm2.minCoeff() > 0.0) || !p.inertia_kgm2.allFinite())
    throw_invalid("inertia_kgm2", "all entries must be > 0");
  if (!(p.k_trans > 0.0) || !std::isfinite(p.k_trans))
    throw_invalid("k_trans", "must be > 0");
  if (!(p.k_rot > 0.0) || !std::isfinite(p.k_rot))
    throw_invalid("k_rot", "must be > 0");
  if (!(p.damping_alpha >= 0.0) || !std::isfinite(p.damping_alpha))
    throw_invalid("damping_alpha", "must be >= 0");
  if (p.input_matrix && !p.input_matrix->allFinite())
    throw_invalid("input_matrix", "must be finite");
}

SystemMatrices build_system(const PlatformParams& p) {
  validate(p);
  Vector6 m;
  m << Vector3::Constant(p.mass_kg), p.inertia_kgm2;
  Vector6 k;
  k << Vector3::Constant(p.k_trans), Vector3::Constant(p.k_rot);

  SystemMatrices s;
  s.mass = m.asDiagonal();
  s.stiffness = k.asDiagonal();
  s.damping = p.damping_alpha * s.stiffness;
  s.input = p.input_matrix.value_or(Matrix6::Identity());
  return s;
}

Vector6 natural_frequencies(const SystemMatrices& system) {
  if (!is_diagonal(system.mass) || !is_diagonal(system.stiffness))
    throw Error(ErrorKind::Unsupported,
                "natural_frequencies requires diagonal M and K");
  return (system.stiffness.diagonal().array() /
          system.mass.diagonal().array())
      .sqrt()
      .matrix();
}

Vector6 static_deflection(const SystemMatrices& system, const Vector6& force) {
  return system.stiffness.ldlt().solve(system.input * force);
}

double mechanical_energy(const SystemMatrices& system,
                         const PlatformState& state) {
  return 0.5 * state.qdot.dot(system.mass * state.qdot) +
         0.5 * state.q.dot(system.stiffness * state.q);
}

PlatformState rk4_step(const SystemMatrices& system, const PlatformState& state,
                       double dt, const ForcingFunction& forcing) {
  if (!(dt > 0.0)) throw_invalid("dt", "must be > 0");
  return step(StateDerivative(system, forcing), state, dt);
}

Trajectory integrate(const SystemMatrices& system, const PlatformState& initial,
                     const ForcingFunction& forcing, double duration, double dt,
                     const IntegrationOptions& options) {
  if (!(dt > 0.0)) throw_invalid("dt", "must be > 0");
  if (!(duration >= dt)) throw_invalid("duration", "must be >= dt");
  if (!initial.q.allFinite() || !initial.qdot.allFinite() ||
      !std::isfinite(initial.t))
    throw_invalid("initial", "state must be finite");

  // Guard against duration/dt landing a hair below an integer.
  const auto steps =
      static_cast<std::size_t>(std::floor(duration / dt * (1.0 + 1e-12)));

  const StateDerivative deriv(system, forcing);
  Trajectory traj;
  traj.dt = dt;
  traj.states.reserve(steps + 1);
  traj.states.push_back(initial);

  PlatformState current = initial;
  for (std::size_t i = 1; i <= steps; ++i) {
    current = step(deriv, current, dt);
    current.t = initial.t + static_cast<double>(i) * dt;
    const double worst = current.q.cwiseAbs().maxCoeff();
    if (!current.q.allFinite() || !current.qdot.allFinite() ||
        worst > options.divergence_bound) {
      throw Error(ErrorKind::Divergence,
                  "integration diverged at t = " + time_str(current.t) +
                      " s (|q| exceeded " + time_str(options.divergence_bound) +
                      ")");
    }
    traj.states.push_back(current);
  }
  return traj;
}

}  // namespace fsopoint

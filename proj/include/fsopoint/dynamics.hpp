#pragma once

// Lumped 6-DOF platform vibration model  M q'' + C q' + K q = B F(t),
// integrated with fixed-step classical Runge-Kutta.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "fsopoint/forcing.hpp"
#include "fsopoint/types.hpp"

namespace fsopoint {

/// Generalized coordinates in storage order. Translations in m, rotations in
/// rad; roll is about x, pitch about y, yaw about z (the link axis).
enum class Dof : int { X = 0, Y, Z, Roll, Pitch, Yaw };

inline constexpr int kDofCount = 6;

constexpr int index(Dof d) { return static_cast<int>(d); }

inline constexpr std::array<std::string_view, kDofCount> kDofNames{
    "x_m", "y_m", "z_m", "roll_rad", "pitch_rad", "yaw_rad"};

struct PlatformParams {
  double mass_kg = 0.7;
  Vector3 inertia_kgm2{0.01, 0.01, 0.02};
  double k_trans = 1e3;  ///< N/m
  double k_rot = 1e3;    ///< N*m/rad
  double damping_alpha = 0.002;
  std::optional<Matrix6> input_matrix;  ///< identity when absent
};

struct SystemMatrices {
  Matrix6 mass;
  Matrix6 damping;
  Matrix6 stiffness;
  Matrix6 input;
};

void validate(const PlatformParams& p);

/// Diagonal M and K, proportional damping C = alpha * K.
SystemMatrices build_system(const PlatformParams& p);

/// sqrt(K_ii / M_ii) per DOF in layout order. Requires diagonal M and K.
Vector6 natural_frequencies(const SystemMatrices& system);

/// Static response K^-1 B F.
Vector6 static_deflection(const SystemMatrices& system, const Vector6& force);

struct PlatformState {
  double t = 0.0;
  Vector6 q = Vector6::Zero();
  Vector6 qdot = Vector6::Zero();
};

struct Trajectory {
  double dt = 0.0;
  std::vector<PlatformState> states;
};

/// 1/2 qdot' M qdot + 1/2 q' K q
double mechanical_energy(const SystemMatrices& system,
                         const PlatformState& state);

PlatformState rk4_step(const SystemMatrices& system, const PlatformState& state,
                       double dt, const ForcingFunction& forcing);

struct IntegrationOptions {
  /// Any |q_i| above this (m or rad) aborts with a divergence error.
  double divergence_bound = 1e3;
};

/// floor(duration/dt) + 1 states starting at `initial`, state i at
/// initial.t + i*dt.
Trajectory integrate(const SystemMatrices& system, const PlatformState& initial,
                     const ForcingFunction& forcing, double duration, double dt,
                     const IntegrationOptions& options = {});

}  // namespace fsopoint

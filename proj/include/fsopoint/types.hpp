#pragma once

#include <Eigen/Core>

namespace fsopoint {

using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kGravity = 9.81;  // m/s^2

}  // namespace fsopoint

#pragma once

// Receiver-plane pointing error: projection of platform motion, summary
// statistics, and Gaussian / Rayleigh fits.

#include <cstddef>
#include <span>
#include <vector>

#include "fsopoint/dynamics.hpp"

namespace fsopoint {

enum class ProjectionMode {
  AngularOnly,        ///< lateral = theta * L
  AngularPlusLinear,  ///< lateral = theta * L + q_perp
};

/// Angles in mrad, lateral displacements in m. rho = |(theta_x, theta_y)|.
struct PointingSample {
  double t = 0.0;
  double theta_x_mrad = 0.0;
  double theta_y_mrad = 0.0;
  double rho_mrad = 0.0;
  double lateral_x_m = 0.0;
  double lateral_y_m = 0.0;
};

/// Builds a sample from receiver-plane displacements; angles follow from the
/// small-angle relation theta = lateral / range.
PointingSample sample_from_lateral(double t, double lateral_x_m,
                                   double lateral_y_m, double range_m);

struct PointingSeries {
  double link_range_m = 0.0;
  std::vector<PointingSample> samples;
};

/// theta_x follows roll, theta_y follows pitch.
PointingSeries project_to_receiver(const Trajectory& traj, double link_range_m,
                                   ProjectionMode mode);

/// How much of the receiver-plane motion comes from rotation vs translation.
/// Both parts are mean-removed RMS over the x and y receiver axes.
struct LateralBreakdown {
  double angular_rms_m = 0.0;
  double linear_rms_m = 0.0;
  double ratio = 0.0;  ///< angular / linear
};

LateralBreakdown lateral_breakdown(const Trajectory& traj, double link_range_m);

/// Sample statistics (n-1 denominator). `lateral_mm` is the magnitude of the
/// receiver-plane displacement, the quantity a camera on the receiver measures
/// directly.
struct StatsSummary {
  std::size_t n = 0;
  double mu_theta_x = 0.0;
  double mu_theta_y = 0.0;
  double mu_rho = 0.0;
  double sigma_theta_x = 0.0;
  double sigma_theta_y = 0.0;
  double sigma_rho = 0.0;
  double mu_lateral_mm = 0.0;
  double sigma_lateral_mm = 0.0;
};

StatsSummary stats(const PointingSeries& series);

struct GaussianFit {
  double mean = 0.0;
  double std = 0.0;
  bool degenerate = false;  ///< zero spread
};

GaussianFit fit_gaussian(std::span<const double> samples);

/// Maximum-likelihood scale sqrt(sum r^2 / 2n).
double fit_rayleigh(std::span<const double> magnitudes);

/// Kolmogorov-Smirnov distance between the magnitudes and Rayleigh(sigma).
double rayleigh_ks_statistic(std::span<const double> magnitudes, double sigma);

struct FitResult {
  GaussianFit gaussian_x;
  GaussianFit gaussian_y;
  double rayleigh_sigma = 0.0;
  double rayleigh_ks = 0.0;  ///< reported, never enforced
};

FitResult fit(const PointingSeries& series);

/// 100 * |measured - predicted| / measured
double prediction_error(double measured, double predicted);

}  // namespace fsopoint

#include "fsopoint/pointing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

// Two-pass sample mean and n-1 standard deviation.
Moments moments(std::span<const double> v) {
  const auto n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

void require_range(double range_m) {
  if (!(range_m > 0.0) || !std::isfinite(range_m))
    throw_invalid("link_range_m", "must be > 0");
}

void require_samples(std::size_t n) {
  if (n < 2)
    throw Error(ErrorKind::InsufficientData,
                "need at least 2 samples, got " + std::to_string(n));
}

}  // namespace

PointingSample sample_from_lateral(double t, double lateral_x_m,
                                   double lateral_y_m, double range_m) {
  PointingSample s;
  s.t = t;
  s.lateral_x_m = lateral_x_m;
  s.lateral_y_m = lateral_y_m;
  s.theta_x_mrad = 1000.0 * lateral_x_m / range_m;
  s.theta_y_mrad = 1000.0 * lateral_y_m / range_m;
  s.rho_mrad = std::hypot(s.theta_x_mrad, s.theta_y_mrad);
  return s;
}

PointingSeries project_to_receiver(const Trajectory& traj, double link_range_m,
                                   ProjectionMode mode) {
  require_range(link_range_m);
  PointingSeries series;
  series.link_range_m = link_range_m;
  series.samples.reserve(traj.states.size());
  for (const auto& st : traj.states) {
    const double roll = st.q[index(Dof::Roll)];
    const double pitch = st.q[index(Dof::Pitch)];
    if (mode == ProjectionMode::AngularOnly) {
      PointingSample s;
      s.t = st.t;
      s.theta_x_mrad = 1000.0 * roll;
      s.theta_y_mrad = 1000.0 * pitch;
      s.rho_mrad = std::hypot(s.theta_x_mrad, s.theta_y_mrad);
      s.lateral_x_m = roll * link_range_m;
      s.lateral_y_m = pitch * link_range_m;
      series.samples.push_back(s);
    } else {
      series.samples.push_back(sample_from_lateral(
          st.t, roll * link_range_m + st.q[index(Dof::X)],
          pitch * link_range_m + st.q[index(Dof::Y)], link_range_m));
    }
  }
  return series;
}

LateralBreakdown lateral_breakdown(const Trajectory& traj,
                                   double link_range_m) {
  require_range(link_range_m);
  require_samples(traj.states.size());
  const auto n = static_cast<double>(traj.states.size());

  Eigen::Vector2d ang_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d lin_mean = Eigen::Vector2d::Zero();
  for (const auto& st : traj.states) {
    ang_mean += link_range_m *
                Eigen::Vector2d(st.q[index(Dof::Roll)], st.q[index(Dof::Pitch)]);
    lin_mean += Eigen::Vector2d(st.q[index(Dof::X)], st.q[index(Dof::Y)]);
  }
  ang_mean /= n;
  lin_mean /= n;

  double ang_ss = 0.0;
  double lin_ss = 0.0;
  for (const auto& st : traj.states) {
    const Eigen::Vector2d ang =
        link_range_m *
        Eigen::Vector2d(st.q[index(Dof::Roll)], st.q[index(Dof::Pitch)]);
    const Eigen::Vector2d lin(st.q[index(Dof::X)], st.q[index(Dof::Y)]);
    ang_ss += (ang - ang_mean).squaredNorm();
    lin_ss += (lin - lin_mean).squaredNorm();
  }

  LateralBreakdown out;
  out.angular_rms_m = std::sqrt(ang_ss / n);
  out.linear_rms_m = std::sqrt(lin_ss / n);
  out.ratio = out.linear_rms_m > 0.0
                  ? out.angular_rms_m / out.linear_rms_m
                  : std::numeric_limits<double>::infinity();
  return out;
}

StatsSummary stats(const PointingSeries& series) {
  const auto& s = series.samples;
  require_samples(s.size());

  std::vector<double> tx, ty, rho, lat;
  tx.reserve(s.size());
  ty.reserve(s.size());
  rho.reserve(s.size());
  lat.reserve(s.size());
  for (const auto& p : s) {
    tx.push_back(p.theta_x_mrad);
    ty.push_back(p.theta_y_mrad);
    rho.push_back(p.rho_mrad);
    lat.push_back(1000.0 * std::hypot(p.lateral_x_m, p.lateral_y_m));
  }

  const auto mx = moments(tx);
  const auto my = moments(ty);
  const auto mr = moments(rho);
  const auto ml = moments(lat);

  StatsSummary out;
  out.n = s.size();
  out.mu_theta_x = mx.mean;
  out.mu_theta_y = my.mean;
  out.mu_rho = mr.mean;
  out.sigma_theta_x = mx.std;
  out.sigma_theta_y = my.std;
  out.sigma_rho = mr.std;
  out.mu_lateral_mm = ml.mean;
  out.sigma_lateral_mm = ml.std;
  return out;
}

GaussianFit fit_gaussian(std::span<const double> samples) {
  require_samples(samples.size());
  const auto m = moments(samples);
  return {m.mean, m.std, m.std == 0.0};
}

double fit_rayleigh(std::span<const double> magnitudes) {
  require_samples(magnitudes.size());
  double sum_sq = 0.0;
  for (double r : magnitudes) {
    if (!(r >= 0.0))
      throw Error(ErrorKind::InvalidParameter,
                  "magnitudes: negative or non-finite value " +
                      std::to_string(r));
    sum_sq += r * r;
  }
  return std::sqrt(sum_sq / (2.0 * static_cast<double>(magnitudes.size())));
}

double rayleigh_ks_statistic(std::span<const double> magnitudes, double sigma) {
  require_samples(magnitudes.size());
  if (!(sigma > 0.0)) return 1.0;
  std::vector<double> sorted(magnitudes.begin(), magnitudes.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double r = sorted[i];
    const double cdf = 1.0 - std::exp(-r * r / (2.0 * sigma * sigma));
    d = std::max({d, static_cast<double>(i + 1) / n - cdf,
                  cdf - static_cast<double>(i) / n});
  }
  return d;
}

FitResult fit(const PointingSeries& series) {
  require_samples(series.samples.size());
  std::vector<double> tx, ty, rho;
  for (const auto& p : series.samples) {
    tx.push_back(p.theta_x_mrad);
    ty.push_back(p.theta_y_mrad);
    rho.push_back(p.rho_mrad);
  }
  FitResult out;
  out.gaussian_x = fit_gaussian(tx);
  out.gaussian_y = fit_gaussian(ty);
  out.rayleigh_sigma = fit_rayleigh(rho);
  out.rayleigh_ks = rayleigh_ks_statistic(rho, out.rayleigh_sigma);
  return out;
}

double prediction_error(double measured, double predicted) {
  if (!(measured > 0.0) || !std::isfinite(measured))
    throw_invalid("measured", "must be > 0");
  return 100.0 * std::abs(measured - predicted) / measured;
}

}  // namespace fsopoint

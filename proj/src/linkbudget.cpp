#include "fsopoint/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw_invalid(field, "must be > 0");
}

double to_db(double ratio, double floor_db) {
  if (!(ratio > 0.0)) return floor_db;
  return std::max(10.0 * std::log10(ratio), floor_db);
}

}  // namespace

void validate(const LinkGeometry& g) {
  require_positive(g.range_m, "range_m");
  require_positive(g.divergence_rad, "divergence_rad");
  require_positive(g.aperture_m, "aperture_m");
}

double attenuation_db(double received_power, double transmitted_power) {
  require_positive(received_power, "received_power");
  require_positive(transmitted_power, "transmitted_power");
  return 10.0 * std::log10(received_power / transmitted_power);
}

double geometric_loss_db(const LinkGeometry& g) {
  validate(g);
  return 20.0 * std::log10(g.aperture_m / g.footprint_m());
}

double circle_overlap_area(double r1, double r2, double distance) {
  const double d = std::abs(distance);
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1),
                               -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2),
                               -1.0, 1.0);
  const double kite = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) *
                      (d + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) -
         0.5 * std::sqrt(std::max(kite, 0.0));
}

double overlap_fraction(const LinkGeometry& g, double offset_m) {
  validate(g);
  if (!(offset_m >= 0.0)) throw_invalid("offset_m", "must be >= 0");
  const double r_ap = 0.5 * g.aperture_m;
  const double r_beam = 0.5 * g.footprint_m();
  return circle_overlap_area(r_ap, r_beam, offset_m) / (kPi * r_ap * r_ap);
}

double pointing_loss_db(const LinkGeometry& g, double offset_m,
                        double floor_db) {
  return to_db(overlap_fraction(g, offset_m), floor_db);
}

ExpectedLoss expected_pointing_loss_db(const LinkGeometry& g,
                                       double rayleigh_sigma_mrad,
                                       std::size_t n_samples, std::uint64_t seed,
                                       double floor_db) {
  validate(g);
  require_positive(rayleigh_sigma_mrad, "rayleigh_sigma_mrad");
  if (n_samples < 1000) throw_invalid("n_samples", "must be >= 1000");

  const double sigma_rad = 1e-3 * rayleigh_sigma_mrad;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    // Inverse CDF of the Rayleigh distribution.
    const double rho = sigma_rad * std::sqrt(-2.0 * std::log1p(-uniform(rng)));
    const double f = overlap_fraction(g, rho * g.range_m);
    sum += f;
    sum_sq += f * f;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(sum_sq / n - mean * mean, 0.0) * n / (n - 1.0);

  ExpectedLoss out;
  out.samples = n_samples;
  out.mean_fraction = mean;
  out.std_error_fraction = std::sqrt(var / n);
  out.loss_db = to_db(mean, floor_db);
  out.std_error_db = mean > 0.0 ? 10.0 / std::log(10.0) *
                                      out.std_error_fraction / mean
                                : 0.0;
  return out;
}

std::vector<CurvePoint> geometric_loss_curve(double aperture_m,
                                             double divergence_rad,
                                             double range_start_m,
                                             double range_end_m,
                                             std::size_t n_points) {
  require_positive(range_start_m, "range_start_m");
  if (!(range_end_m > range_start_m))
    throw_invalid("range_end_m", "must exceed range_start_m");
  if (n_points < 2) throw_invalid("n_points", "must be >= 2");

  const double log_start = std::log(range_start_m);
  const double log_step =
      (std::log(range_end_m) - log_start) / static_cast<double>(n_points - 1);

  std::vector<CurvePoint> curve;
  curve.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    double range = std::exp(log_start + log_step * static_cast<double>(i));
    if (i == 0) range = range_start_m;
    if (i + 1 == n_points) range = range_end_m;
    curve.push_back(
        {range, geometric_loss_db({range, divergence_rad, aperture_m, {}})});
  }
  return curve;
}

}  // namespace fsopoint

#pragma once

// Attenuation figures for a flat-top beam: geometric loss from beam spread and
// pointing loss from the footprint sliding off the receiver aperture.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fsopoint {

inline constexpr double kDefaultLossFloorDb = -100.0;

struct LinkGeometry {
  double range_m = 0.0;         ///< L
  double divergence_rad = 0.0;  ///< full angle
  double aperture_m = 0.0;      ///< receiver diameter
  std::optional<double> transmit_power_dbm;

  double footprint_m() const { return divergence_rad * range_m; }
  /// Footprint at least as large as the aperture.
  bool far_field() const { return footprint_m() >= aperture_m; }
};

void validate(const LinkGeometry& g);

/// 10 log10(received / transmitted)
double attenuation_db(double received_power, double transmitted_power);

/// 20 log10(d_R / (theta L))
double geometric_loss_db(const LinkGeometry& g);

/// Area of the intersection of two circles of radii r1, r2 whose centres are
/// `distance` apart.
double circle_overlap_area(double r1, double r2, double distance);

/// Fraction of the aperture area covered by the footprint displaced by
/// `offset_m`.
double overlap_fraction(const LinkGeometry& g, double offset_m);

/// 10 log10(overlap_fraction), floored at `floor_db`.
double pointing_loss_db(const LinkGeometry& g, double offset_m,
                        double floor_db = kDefaultLossFloorDb);

struct ExpectedLoss {
  double loss_db = 0.0;
  double std_error_db = 0.0;
  double mean_fraction = 0.0;
  double std_error_fraction = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo mean of the overlap fraction over offsets rho * L with rho
/// drawn Rayleigh(sigma).
ExpectedLoss expected_pointing_loss_db(const LinkGeometry& g,
                                       double rayleigh_sigma_mrad,
                                       std::size_t n_samples, std::uint64_t seed,
                                       double floor_db = kDefaultLossFloorDb);

struct CurvePoint {
  double range_m = 0.0;
  double loss_db = 0.0;
};

/// Log-spaced sweep of geometric loss over [start, end].
std::vector<CurvePoint> geometric_loss_curve(double aperture_m,
                                             double divergence_rad,
                                             double range_start_m,
                                             double range_end_m,
                                             std::size_t n_points);

}  // namespace fsopoint

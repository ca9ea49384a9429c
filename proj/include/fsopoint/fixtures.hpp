#pragma once

// Synthetic-matched measurement fixtures: a seeded 150-sample series built to
// hit a set of target summary statistics exactly. Only the summary of the
// drone measurement is available, so this checks the statistics pipeline, not
// any raw data.

#include <cstdint>
#include <vector>

#include "fsopoint/pointing.hpp"
#include "fsopoint/tracker.hpp"

namespace fsopoint {

struct SummaryTargets {
  std::size_t n = 150;
  double fps = 30.0;
  double mu_theta_x = 2.8749;   // mrad
  double mu_theta_y = 1.2746;
  double sigma_theta_x = 3.2768;
  double sigma_theta_y = 1.5535;
  double mu_lateral_mm = 12.97;  // receiver-plane magnitude
  double sigma_lateral_mm = 6.2563;
};

struct MatchedFixture {
  PointingSeries series;
  double wall_distance_m = 0.0;  ///< distance implied by the targets
  double correlation = 0.0;      ///< x/y correlation solved for
  std::uint64_t seed = 0;
};

/// Component means/stds are hit exactly (affine standardization of a seeded
/// normal draw); the x/y correlation is solved so that the receiver-plane
/// magnitude mean matches, which fixes the wall distance and thereby the
/// magnitude spread. Seeds are tried in order from `first_seed`.
MatchedFixture make_matched_fixture(const SummaryTargets& targets = {},
                                    std::uint64_t first_seed = 0);

/// Multiplies every angle and displacement by `factor`.
PointingSeries scale_series(const PointingSeries& series, double factor);

struct FrameFixtureOptions {
  int width = 256;
  int height = 256;
  PixelPoint boresight_px{127.5, 127.5};
  double footprint_diameter_px = 24.0;
  double meters_per_pixel = 0.0005;
  std::uint8_t peak = 230;
  std::uint8_t background = 12;
  std::uint8_t threshold = 128;
};

struct FrameFixture {
  Frame reference;  ///< footprint at rest on the boresight
  std::vector<Frame> frames;
  double ref_diameter_m = 0.0;
};

/// Renders one frame per sample with the footprint displaced by the sample's
/// lateral offset; frame i has index i and the series' frame rate.
FrameFixture render_frame_fixture(const PointingSeries& series, double fps,
                                  const FrameFixtureOptions& options = {});

}  // namespace fsopoint

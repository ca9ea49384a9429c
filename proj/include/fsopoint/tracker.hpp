#pragma once

// Laser footprint tracking on 8-bit grayscale frames: centroid detection,
// pixel-to-metre calibration from a vibration-free reference frame, and
// extraction of a receiver-plane displacement series.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "fsopoint/pointing.hpp"

namespace fsopoint {

/// Row-major 8-bit frame. Pixel (x, y) has its centre at continuous
/// coordinate (x, y); y grows downwards.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  int index = 0;
  double fps = 30.0;

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

Frame make_frame(int width, int height, std::uint8_t fill = 0);

/// Binary PGM (P5, maxval <= 255).
Frame read_pgm(const std::filesystem::path& path, int index = 0,
               double fps = 30.0);
void write_pgm(const std::filesystem::path& path, const Frame& frame);

/// *.pgm files in lexicographic order.
std::vector<std::filesystem::path> list_frames(
    const std::filesystem::path& dir);

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Intensity-weighted centroid over pixels >= threshold.
std::optional<PixelPoint> detect_centroid(const Frame& frame,
                                          std::uint8_t threshold);

/// Mean of the x and y extents (max - min + 1) of above-threshold pixels.
std::optional<double> footprint_diameter_px(const Frame& frame,
                                            std::uint8_t threshold);

struct Calibration {
  double meters_per_pixel = 0.0;
  double ref_diameter_px = 0.0;
  double ref_diameter_m = 0.0;
  std::optional<PixelPoint> ref_center_px;  ///< footprint centre at rest
};

Calibration calibrate(const Frame& ref_frame, std::uint8_t threshold,
                      double ref_diameter_m);

enum class Boresight {
  Mean,        ///< mean centroid of the series
  FirstFrame,  ///< first detected centroid
  Reference,   ///< centroid of the calibration reference frame
};

struct TrackedSample {
  int frame_index = 0;
  double t = 0.0;
  double lateral_x_m = 0.0;
  double lateral_y_m = 0.0;
};

struct TrackedSeries {
  std::vector<TrackedSample> samples;
  std::vector<int> gaps;  ///< frame indices without a detection
  PixelPoint boresight_px;
  double meters_per_pixel = 0.0;
};

/// Lateral displacement (centroid - boresight) * meters_per_pixel per frame,
/// t = index / fps. Frames without a detection are recorded as gaps.
TrackedSeries extract_series(std::span<const Frame> frames,
                             const Calibration& cal, std::uint8_t threshold,
                             Boresight boresight);

/// 1000 * lateral / distance
double angular_from_lateral(double lateral_m, double distance_m);

PointingSeries to_pointing_series(const TrackedSeries& tracked,
                                  double distance_m);

// Synthetic frames -----------------------------------------------------------

/// Uniform disc with area-weighted anti-aliasing (supersample^2 sub-pixels).
Frame render_disc(int width, int height, PixelPoint center, double diameter_px,
                  std::uint8_t peak, std::uint8_t background = 0,
                  int supersample = 8);

/// Gaussian spot sampled at pixel centres and rounded.
Frame render_gaussian_spot(int width, int height, PixelPoint center,
                           double sigma_px, std::uint8_t peak,
                           std::uint8_t background = 0);

}  // namespace fsopoint

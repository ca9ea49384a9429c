#include "fsopoint/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

}  // namespace

Frame make_frame(int width, int height, std::uint8_t fill) {
  if (width <= 0 || height <= 0)
    throw_invalid("frame", "width and height must be > 0");
  Frame f;
  f.width = width;
  f.height = height;
  f.pixels.assign(static_cast<std::size_t>(width) *
                      static_cast<std::size_t>(height),
                  fill);
  return f;
}

Frame read_pgm(const std::filesystem::path& path, int index, double fps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Data, path.string() + ": cannot open");

  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::Data, path.string() + ": " + why);
  };
  if (pgm_token(in) != "P5") throw bad("not a binary PGM (P5)");
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(pgm_token(in));
    height = std::stoi(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    throw bad("malformed header");
  }
  if (width <= 0 || height <= 0) throw bad("bad dimensions");
  if (maxval <= 0 || maxval > 255) throw bad("only 8-bit PGM is supported");

  Frame f = make_frame(width, height);
  f.index = index;
  f.fps = fps;
  in.read(reinterpret_cast<char*>(f.pixels.data()),
          static_cast<std::streamsize>(f.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(f.pixels.size()))
    throw bad("truncated pixel data");
  if (maxval != 255) {
    for (auto& p : f.pixels) p = clamp_u8(p * 255.0 / maxval);
  }
  return f;
}

void write_pgm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Data, path.string() + ": cannot write");
  out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
}

std::vector<std::filesystem::path> list_frames(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw Error(ErrorKind::Usage, dir.string() + ": not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm")
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PixelPoint> detect_centroid(const Frame& frame,
                                          std::uint8_t threshold) {
  double sum_w = 0.0, sum_x = 0.0, sum_y = 0.0;
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const std::uint8_t v = frame.at(x, y);
      if (v < threshold || v == 0) continue;
      sum_w += v;
      sum_x += static_cast<double>(v) * x;
      sum_y += static_cast<double>(v) * y;
    }
  }
  if (sum_w == 0.0) return std::nullopt;
  return PixelPoint{sum_x / sum_w, sum_y / sum_w};
}

std::optional<double> footprint_diameter_px(const Frame& frame,
                                            std::uint8_t threshold) {
  int min_x = std::numeric_limits<int>::max(), max_x = -1;
  int min_y = std::numeric_limits<int>::max(), max_y = -1;
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const std::uint8_t v = frame.at(x, y);
      if (v < threshold || v == 0) continue;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) return std::nullopt;
  return 0.5 * ((max_x - min_x + 1) + (max_y - min_y + 1));
}

Calibration calibrate(const Frame& ref_frame, std::uint8_t threshold,
                      double ref_diameter_m) {
  if (!(ref_diameter_m > 0.0)) throw_invalid("ref_diameter_m", "must be > 0");
  const auto diameter = footprint_diameter_px(ref_frame, threshold);
  if (!diameter)
    throw Error(ErrorKind::Calibration,
                "reference frame has no footprint above threshold " +
                    std::to_string(threshold));
  Calibration cal;
  cal.ref_diameter_px = *diameter;
  cal.ref_diameter_m = ref_diameter_m;
  cal.meters_per_pixel = ref_diameter_m / *diameter;
  cal.ref_center_px = detect_centroid(ref_frame, threshold);
  return cal;
}

TrackedSeries extract_series(std::span<const Frame> frames,
                             const Calibration& cal, std::uint8_t threshold,
                             Boresight boresight) {
  if (!(cal.meters_per_pixel > 0.0))
    throw_invalid("meters_per_pixel", "must be > 0");

  struct Hit {
    const Frame* frame;
    PixelPoint c;
  };
  std::vector<Hit> hits;
  TrackedSeries out;
  out.meters_per_pixel = cal.meters_per_pixel;
  for (const auto& f : frames) {
    if (!(f.fps > 0.0)) throw_invalid("fps", "must be > 0");
    if (auto c = detect_centroid(f, threshold))
      hits.push_back({&f, *c});
    else
      out.gaps.push_back(f.index);
  }
  if (hits.size() < 2)
    throw Error(ErrorKind::InsufficientData,
                "need at least 2 frames with a detectable footprint, got " +
                    std::to_string(hits.size()));

  switch (boresight) {
    case Boresight::FirstFrame:
      out.boresight_px = hits.front().c;
      break;
    case Boresight::Mean: {
      PixelPoint m;
      for (const auto& h : hits) {
        m.x += h.c.x;
        m.y += h.c.y;
      }
      m.x /= static_cast<double>(hits.size());
      m.y /= static_cast<double>(hits.size());
      out.boresight_px = m;
      break;
    }
    case Boresight::Reference:
      if (!cal.ref_center_px)
        throw Error(ErrorKind::Calibration,
                    "reference boresight needs a calibration reference frame");
      out.boresight_px = *cal.ref_center_px;
      break;
  }

  out.samples.reserve(hits.size());
  for (const auto& h : hits) {
    TrackedSample s;
    s.frame_index = h.frame->index;
    s.t = h.frame->index / h.frame->fps;
    s.lateral_x_m = (h.c.x - out.boresight_px.x) * cal.meters_per_pixel;
    s.lateral_y_m = (h.c.y - out.boresight_px.y) * cal.meters_per_pixel;
    out.samples.push_back(s);
  }
  return out;
}

double angular_from_lateral(double lateral_m, double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m))
    throw_invalid("distance_m", "must be > 0");
  return 1000.0 * lateral_m / distance_m;
}

PointingSeries to_pointing_series(const TrackedSeries& tracked,
                                  double distance_m) {
  angular_from_lateral(0.0, distance_m);  // validates distance
  PointingSeries series;
  series.link_range_m = distance_m;
  series.samples.reserve(tracked.samples.size());
  for (const auto& s : tracked.samples)
    series.samples.push_back(
        sample_from_lateral(s.t, s.lateral_x_m, s.lateral_y_m, distance_m));
  return series;
}

Frame render_disc(int width, int height, PixelPoint center, double diameter_px,
                  std::uint8_t peak, std::uint8_t background, int supersample) {
  if (supersample < 1) throw_invalid("supersample", "must be >= 1");
  Frame f = make_frame(width, height, background);
  const double r = 0.5 * diameter_px;
  const double r2 = r * r;
  const int x0 = std::max(0, static_cast<int>(std::floor(center.x - r - 1)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(center.x + r + 1)));
  const int y0 = std::max(0, static_cast<int>(std::floor(center.y - r - 1)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(center.y + r + 1)));
  const double sub = 1.0 / supersample;
  const double total = static_cast<double>(supersample) * supersample;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      int inside = 0;
      for (int j = 0; j < supersample; ++j) {
        const double py = y - 0.5 + (j + 0.5) * sub - center.y;
        for (int i = 0; i < supersample; ++i) {
          const double px = x - 0.5 + (i + 0.5) * sub - center.x;
          if (px * px + py * py <= r2) ++inside;
        }
      }
      if (inside == 0) continue;
      const double cover = inside / total;
      f.at(x, y) = clamp_u8(background + cover * (peak - background));
    }
  }
  return f;
}

Frame render_gaussian_spot(int width, int height, PixelPoint center,
                           double sigma_px, std::uint8_t peak,
                           std::uint8_t background) {
  if (!(sigma_px > 0.0)) throw_invalid("sigma_px", "must be > 0");
  Frame f = make_frame(width, height, background);
  const double inv = 1.0 / (2.0 * sigma_px * sigma_px);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x - center.x;
      const double dy = y - center.y;
      const double v = peak * std::exp(-(dx * dx + dy * dy) * inv);
      f.at(x, y) = clamp_u8(std::max<double>(background, v));
    }
  }
  return f;
}

}  // namespace fsopoint

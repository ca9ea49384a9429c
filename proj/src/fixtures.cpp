#include "fsopoint/fixtures.hpp"

#include <cmath>
#include <random>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

using Column = Eigen::VectorXd;

// Zero mean, unit sample standard deviation (n-1).
Column standardize(Column v) {
  v.array() -= v.mean();
  const double sd = std::sqrt(v.squaredNorm() / static_cast<double>(v.size() - 1));
  return v / sd;
}

double mean_magnitude(const SummaryTargets& t, const Column& z1,
                      const Column& z2, double c) {
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z1.size(); ++i) {
    const double x = t.mu_theta_x + t.sigma_theta_x * z1[i];
    const double y = t.mu_theta_y + t.sigma_theta_y * (c * z1[i] + s * z2[i]);
    sum += std::hypot(x, y);
  }
  return sum / static_cast<double>(z1.size());
}

}  // namespace

MatchedFixture make_matched_fixture(const SummaryTargets& t,
                                    std::uint64_t first_seed) {
  if (t.n < 3) throw_invalid("n", "must be >= 3");
  const auto n = static_cast<double>(t.n);

  // Sum of |theta|^2 is fixed by the component targets; the magnitude targets
  // then fix the wall distance.
  const double sum_theta_sq =
      n * (t.mu_theta_x * t.mu_theta_x + t.mu_theta_y * t.mu_theta_y) +
      (n - 1.0) * (t.sigma_theta_x * t.sigma_theta_x +
                   t.sigma_theta_y * t.sigma_theta_y);
  const double sum_lateral_sq = n * t.mu_lateral_mm * t.mu_lateral_mm +
                                (n - 1.0) * t.sigma_lateral_mm *
                                    t.sigma_lateral_mm;
  const double distance_m = std::sqrt(sum_lateral_sq / sum_theta_sq);
  const double target = t.mu_lateral_mm / distance_m;  // mean |theta|, mrad

  for (std::uint64_t seed = first_seed; seed < first_seed + 1000; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Column a(static_cast<Eigen::Index>(t.n)), b(static_cast<Eigen::Index>(t.n));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a[i] = normal(rng);
      b[i] = normal(rng);
    }
    const Column z1 = standardize(a);
    Column b0 = b.array() - b.mean();
    const Column z2 = standardize(b0 - z1 * (z1.dot(b0) / z1.squaredNorm()));

    double lo = -1.0, hi = 1.0;
    double f_lo = mean_magnitude(t, z1, z2, lo) - target;
    const double f_hi = mean_magnitude(t, z1, z2, hi) - target;
    if (f_lo * f_hi > 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = mean_magnitude(t, z1, z2, mid) - target;
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    const double c = 0.5 * (lo + hi);
    const double s = std::sqrt(1.0 - c * c);

    MatchedFixture out;
    out.seed = seed;
    out.correlation = c;
    out.wall_distance_m = distance_m;
    out.series.link_range_m = distance_m;
    out.series.samples.reserve(t.n);
    for (Eigen::Index i = 0; i < z1.size(); ++i) {
      const double tx = t.mu_theta_x + t.sigma_theta_x * z1[i];
      const double ty =
          t.mu_theta_y + t.sigma_theta_y * (c * z1[i] + s * z2[i]);
      out.series.samples.push_back(sample_from_lateral(
          static_cast<double>(i) / t.fps, 1e-3 * tx * distance_m,
          1e-3 * ty * distance_m, distance_m));
    }
    return out;
  }
  throw Error(ErrorKind::InvalidParameter,
              "targets: no seed reaches the requested magnitude mean");
}

PointingSeries scale_series(const PointingSeries& series, double factor) {
  PointingSeries out = series;
  for (auto& s : out.samples) {
    s.theta_x_mrad *= factor;
    s.theta_y_mrad *= factor;
    s.rho_mrad *= std::abs(factor);
    s.lateral_x_m *= factor;
    s.lateral_y_m *= factor;
  }
  return out;
}

FrameFixture render_frame_fixture(const PointingSeries& series, double fps,
                                  const FrameFixtureOptions& o) {
  if (!(fps > 0.0)) throw_invalid("fps", "must be > 0");
  const double reach = 0.5 * o.footprint_diameter_px + 1.0;

  FrameFixture out;
  out.ref_diameter_m = o.footprint_diameter_px * o.meters_per_pixel;
  out.reference = render_disc(o.width, o.height, o.boresight_px,
                              o.footprint_diameter_px, o.peak, o.background);
  out.reference.fps = fps;

  out.frames.reserve(series.samples.size());
  int index = 0;
  for (const auto& s : series.samples) {
    const PixelPoint c{o.boresight_px.x + s.lateral_x_m / o.meters_per_pixel,
                       o.boresight_px.y + s.lateral_y_m / o.meters_per_pixel};
    if (c.x - reach < 0 || c.y - reach < 0 || c.x + reach > o.width - 1 ||
        c.y + reach > o.height - 1)
      throw_invalid("frame", "footprint of sample " + std::to_string(index) +
                                 " falls outside the frame");
    Frame f = render_disc(o.width, o.height, c, o.footprint_diameter_px,
                          o.peak, o.background);
    f.index = index++;
    f.fps = fps;
    out.frames.push_back(std::move(f));
  }
  return out;
}

}  // namespace fsopoint

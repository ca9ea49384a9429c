#include "fsopoint/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace fs = std::filesystem;

namespace {

// Margin past the last integration time so RK4 half-steps stay inside the
// materialized wind field.
constexpr double kWindHorizonMargin = 1.0;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Usage, path.string() + ": cannot write");
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::Usage, dir.string() + ": cannot create directory");
}

void line(std::ostringstream& out, const char* key, double v, int precision) {
  out << key << " = " << format_number(v, precision) << '\n';
}

}  // namespace

// simulate -------------------------------------------------------------------

ForcingFunction build_forcing(const RunConfig& c) {
  ForcingFunction total;
  if (c.propeller_enabled) total = total + propeller_forcing(c.propeller);
  if (c.wind_enabled) {
    WindParams w = c.wind;
    w.seed = c.sim.seed;
    total = total + wind_forcing(w, c.sim.settle_s + c.sim.duration_s +
                                        kWindHorizonMargin);
  }
  return total;
}

SimulationResult run_simulation(const RunConfig& c) {
  validate(c.platform);
  validate(c.link);
  const SystemMatrices system = build_system(c.platform);
  const ForcingFunction forcing = build_forcing(c);
  const IntegrationOptions opts{c.sim.divergence_bound};

  PlatformState start;
  if (c.sim.initial == InitialState::Equilibrium)
    start.q = static_deflection(system, forcing.nominal());
  if (c.sim.settle_s > 0.0) {
    start = integrate(system, start, forcing, c.sim.settle_s, c.sim.dt_s, opts)
                .states.back();
  }

  const Trajectory full =
      integrate(system, start, forcing, c.sim.duration_s, c.sim.dt_s, opts);

  SimulationResult r;
  r.trajectory.dt = full.dt * c.output.stride;
  for (std::size_t i = 0; i < full.states.size();
       i += static_cast<std::size_t>(c.output.stride)) {
    PlatformState s = full.states[i];
    s.t = static_cast<double>(i) * c.sim.dt_s;
    r.trajectory.states.push_back(s);
  }
  r.pointing = project_to_receiver(r.trajectory, c.link.range_m, c.projection);
  r.breakdown = lateral_breakdown(r.trajectory, c.link.range_m);
  if (r.pointing.samples.size() >= 2) {
    r.stats = stats(r.pointing);
    r.fit = fit(r.pointing);
  }
  return r;
}

namespace {

std::string simulation_report(const RunConfig& c, const SimulationResult& r) {
  const int p = c.output.precision;
  std::ostringstream out;
  out << "# simulate\n";
  out << "samples = " << r.pointing.samples.size() << '\n';
  line(out, "link_range_m", c.link.range_m, p);
  out << "projection = " << to_string(c.projection) << '\n';
  out << "seed = " << c.sim.seed << '\n';
  line(out, "angular_rms_m", r.breakdown.angular_rms_m, p);
  line(out, "linear_rms_m", r.breakdown.linear_rms_m, p);
  line(out, "angular_to_linear_ratio", r.breakdown.ratio, p);
  if (r.pointing.samples.size() >= 2) {
    out << stats_report(r.stats, &r.fit, p);
  } else {
    out << "# statistics need at least 2 samples\n";
  }
  return out.str();
}

}  // namespace

SimulationResult cmd_simulate(const RunConfig& c, const fs::path& out_dir) {
  SimulationResult r = run_simulation(c);
  ensure_dir(out_dir);
  {
    auto out = open_output(out_dir / "trajectory.csv");
    write_trajectory_csv(out, r.trajectory, c.output.precision);
  }
  {
    auto out = open_output(out_dir / "pointing.csv");
    write_pointing_csv(out, r.pointing, c.output.precision);
  }
  {
    auto out = open_output(out_dir / "report.txt");
    out << simulation_report(c, r);
  }
  return r;
}

// track ----------------------------------------------------------------------

TrackResult run_track(const TrackOptions& o) {
  if (!(o.fps > 0.0)) throw_invalid("fps", "must be > 0");
  if (o.threshold < 0 || o.threshold > 255)
    throw_invalid("threshold", "must be in [0, 255]");
  if (!(o.distance_m > 0.0)) throw_invalid("distance_m", "must be > 0");
  const auto threshold = static_cast<std::uint8_t>(o.threshold);

  const auto paths = list_frames(o.frames_dir);
  if (paths.empty())
    throw Error(ErrorKind::Usage,
                o.frames_dir.string() + ": no .pgm frames found");
  std::vector<Frame> frames;
  frames.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    frames.push_back(read_pgm(paths[i], static_cast<int>(i), o.fps));

  TrackResult r;
  if (o.meters_per_pixel) {
    if (!(*o.meters_per_pixel > 0.0))
      throw_invalid("meters_per_pixel", "must be > 0");
    r.calibration.meters_per_pixel = *o.meters_per_pixel;
    if (o.ref_frame) {
      const Frame ref = read_pgm(*o.ref_frame);
      r.calibration.ref_center_px = detect_centroid(ref, threshold);
    }
  } else {
    if (!o.ref_diameter_m)
      throw Error(ErrorKind::Usage,
                  "ref_diameter_m: required unless meters_per_pixel is given");
    const Frame ref = o.ref_frame ? read_pgm(*o.ref_frame) : frames.front();
    r.calibration = calibrate(ref, threshold, *o.ref_diameter_m);
  }

  r.tracked = extract_series(frames, r.calibration, threshold, o.boresight);
  r.pointing = to_pointing_series(r.tracked, o.distance_m);
  r.stats = stats(r.pointing);
  return r;
}

TrackResult cmd_track(const TrackOptions& o, const fs::path& out_dir) {
  TrackResult r = run_track(o);
  ensure_dir(out_dir);
  {
    auto out = open_output(out_dir / "pointing.csv");
    write_pointing_csv(out, r.pointing);
  }
  {
    std::ostringstream rep;
    rep << "# track\n";
    rep << "frames = " << r.tracked.samples.size() + r.tracked.gaps.size()
        << '\n';
    rep << "detected = " << r.tracked.samples.size() << '\n';
    rep << "gaps =";
    for (int g : r.tracked.gaps) rep << ' ' << g;
    rep << '\n';
    line(rep, "meters_per_pixel", r.calibration.meters_per_pixel, 9);
    line(rep, "boresight_x_px", r.tracked.boresight_px.x, 9);
    line(rep, "boresight_y_px", r.tracked.boresight_px.y, 9);
    line(rep, "distance_m", o.distance_m, 9);
    rep << stats_report(r.stats, nullptr);
    auto out = open_output(out_dir / "report.txt");
    out << rep.str();
  }
  return r;
}

// stats ----------------------------------------------------------------------

StatsResult run_stats(const PointingSeries& series) {
  return {stats(series), fit(series)};
}

std::string stats_report(const StatsSummary& s, const FitResult* f,
                         int p) {
  std::ostringstream out;
  out << "n = " << s.n << '\n';
  line(out, "mu_theta_x_mrad", s.mu_theta_x, p);
  line(out, "mu_theta_y_mrad", s.mu_theta_y, p);
  line(out, "sigma_theta_x_mrad", s.sigma_theta_x, p);
  line(out, "sigma_theta_y_mrad", s.sigma_theta_y, p);
  line(out, "mu_rho_mrad", s.mu_rho, p);
  line(out, "sigma_rho_mrad", s.sigma_rho, p);
  line(out, "mu_rho_receiver_mm", s.mu_lateral_mm, p);
  line(out, "sigma_rho_receiver_mm", s.sigma_lateral_mm, p);
  if (f) {
    line(out, "gaussian_x_mean_mrad", f->gaussian_x.mean, p);
    line(out, "gaussian_x_std_mrad", f->gaussian_x.std, p);
    line(out, "gaussian_y_mean_mrad", f->gaussian_y.mean, p);
    line(out, "gaussian_y_std_mrad", f->gaussian_y.std, p);
    line(out, "rayleigh_sigma_mrad", f->rayleigh_sigma, p);
    line(out, "rayleigh_ks", f->rayleigh_ks, p);
  }
  return out.str();
}

// linkbudget -----------------------------------------------------------------

namespace {

BudgetRow budget_row(const LinkBudgetOptions& o, const LinkGeometry& g) {
  BudgetRow row;
  row.range_m = g.range_m;
  row.geometric_db = geometric_loss_db(g);
  if (o.sigma_mrad)
    row.expected_pointing_db =
        expected_pointing_loss_db(g, *o.sigma_mrad, o.samples, o.seed).loss_db;
  row.total_db = row.geometric_db + row.expected_pointing_db;
  return row;
}

}  // namespace

LinkBudgetResult run_linkbudget(const LinkBudgetOptions& o) {
  validate(o.geometry);
  if (o.sigma_mrad && !(*o.sigma_mrad >= 0.0))
    throw_invalid("sigma_mrad", "must be >= 0");
  if (o.curve_start_m.has_value() != o.curve_end_m.has_value())
    throw Error(ErrorKind::Usage,
                "curve: both curve start and curve end are required");

  LinkBudgetResult r;
  r.point.push_back(budget_row(o, o.geometry));
  if (o.curve_start_m) {
    for (const auto& pt :
         geometric_loss_curve(o.geometry.aperture_m, o.geometry.divergence_rad,
                              *o.curve_start_m, *o.curve_end_m,
                              o.curve_points)) {
      LinkGeometry g = o.geometry;
      g.range_m = pt.range_m;
      r.curve.push_back(budget_row(o, g));
    }
  }
  return r;
}

LinkBudgetResult cmd_linkbudget(const LinkBudgetOptions& o,
                                const fs::path& out_dir) {
  LinkBudgetResult r = run_linkbudget(o);
  ensure_dir(out_dir);
  {
    auto out = open_output(out_dir / "budget.csv");
    write_budget_csv(out, r.point);
  }
  if (!r.curve.empty()) {
    auto out = open_output(out_dir / "curve.csv");
    write_budget_csv(out, r.curve);
  }
  return r;
}

// compare --------------------------------------------------------------------

ComparisonReport compare(const PointingSeries& measured,
                         const PointingSeries& predicted,
                         CompareMetric metric) {
  ComparisonReport r;
  r.metric = metric;
  r.measured = stats(measured);
  r.predicted = stats(predicted);
  const bool plane = metric == CompareMetric::ReceiverPlane;
  r.measured_rho = plane ? r.measured.mu_lateral_mm : r.measured.mu_rho;
  r.predicted_rho = plane ? r.predicted.mu_lateral_mm : r.predicted.mu_rho;
  r.prediction_error_percent = prediction_error(r.measured_rho, r.predicted_rho);
  r.delta_mu_theta_x = r.predicted.mu_theta_x - r.measured.mu_theta_x;
  r.delta_mu_theta_y = r.predicted.mu_theta_y - r.measured.mu_theta_y;
  r.delta_sigma_theta_x = r.predicted.sigma_theta_x - r.measured.sigma_theta_x;
  r.delta_sigma_theta_y = r.predicted.sigma_theta_y - r.measured.sigma_theta_y;
  r.delta_mu_rho = r.predicted_rho - r.measured_rho;
  return r;
}

std::string comparison_text(const ComparisonReport& r) {
  const char* unit =
      r.metric == CompareMetric::ReceiverPlane ? "mm (receiver plane)" : "mrad";
  char buf[256];
  std::ostringstream out;
  out << "Error computation for the theoretical prediction\n";
  out << "metric: mean pointing error magnitude, " << unit << "\n\n";
  std::snprintf(buf, sizeof buf, "%-36s %12.3f\n", "Experimental measurement value",
                r.measured_rho);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-36s %12.3f\n", "Theoretical prediction value",
                r.predicted_rho);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-36s %11.2f%%\n", "Prediction error",
                r.prediction_error_percent);
  out << buf << '\n';
  out << "per-axis deltas (predicted - measured), mrad\n";
  std::snprintf(buf, sizeof buf,
                "  mu_theta_x %+.4f  mu_theta_y %+.4f  sigma_theta_x %+.4f  "
                "sigma_theta_y %+.4f\n",
                r.delta_mu_theta_x, r.delta_mu_theta_y, r.delta_sigma_theta_x,
                r.delta_sigma_theta_y);
  out << buf;
  return out.str();
}

ComparisonReport cmd_compare(const fs::path& measured_csv,
                             const fs::path& predicted_csv,
                             const fs::path& out_dir, CompareMetric metric) {
  const ComparisonReport r = compare(read_pointing_csv(measured_csv),
                                     read_pointing_csv(predicted_csv), metric);
  ensure_dir(out_dir);
  {
    auto out = open_output(out_dir / "comparison.txt");
    out << comparison_text(r);
  }
  {
    auto out = open_output(out_dir / "comparison.csv");
    out << "quantity,measured,predicted,delta\n";
    auto row = [&](const char* name, double m, double p) {
      out << name << ',' << format_number(m) << ',' << format_number(p) << ','
          << format_number(p - m) << '\n';
    };
    row("mu_theta_x_mrad", r.measured.mu_theta_x, r.predicted.mu_theta_x);
    row("mu_theta_y_mrad", r.measured.mu_theta_y, r.predicted.mu_theta_y);
    row("sigma_theta_x_mrad", r.measured.sigma_theta_x,
        r.predicted.sigma_theta_x);
    row("sigma_theta_y_mrad", r.measured.sigma_theta_y,
        r.predicted.sigma_theta_y);
    row(r.metric == CompareMetric::ReceiverPlane ? "mu_rho_receiver_mm"
                                                 : "mu_rho_mrad",
        r.measured_rho, r.predicted_rho);
    out << "prediction_error_percent,,," << format_number(r.prediction_error_percent)
        << '\n';
  }
  return r;
}

}  // namespace fsopoint

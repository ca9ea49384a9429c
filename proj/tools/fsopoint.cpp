// Command line front end. Exit status: 0 success, 2 usage or configuration
// error, 3 data error, 4 numerical divergence.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsopoint/commands.hpp"
#include "fsopoint/error.hpp"

namespace {

using namespace fsopoint;

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> set;
};

struct TrackArgs {
  std::string frames;
  double fps = 30.0;
  int threshold = 128;
  std::string ref_frame;
  std::optional<double> ref_diameter_m;
  std::optional<double> meters_per_pixel;
  std::string boresight = "mean";
  double distance_m = 0.0;
  std::string out = "out";
};

struct LinkArgs {
  double range_m = 0.0;
  double divergence_rad = 0.0;
  double aperture_m = 0.0;
  std::optional<double> sigma_mrad;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<double> curve_start_m;
  std::optional<double> curve_end_m;
  std::size_t curve_points = 10;
  std::string out = "out";
};

struct CompareArgs {
  std::string measured;
  std::string predicted;
  std::string metric = "receiver-plane";
  std::string out = "out";
};

int run_simulate(const SimulateArgs& a) {
  std::vector<std::string> overrides = a.set;
  if (a.seed) overrides.push_back("sim.seed = " + std::to_string(*a.seed));
  if (!a.out.empty()) overrides.push_back("output.directory = " + a.out);
  const RunConfig config = load_config(a.config, overrides);
  const auto r = cmd_simulate(config, config.output.directory);
  std::cout << "wrote " << r.trajectory.states.size() << " states to "
            << config.output.directory << '\n';
  if (r.pointing.samples.size() >= 2)
    std::cout << stats_report(r.stats, &r.fit, config.output.precision);
  return 0;
}

int run_track_cmd(const TrackArgs& a) {
  TrackOptions o;
  o.frames_dir = a.frames;
  o.fps = a.fps;
  o.threshold = a.threshold;
  if (!a.ref_frame.empty()) o.ref_frame = a.ref_frame;
  o.ref_diameter_m = a.ref_diameter_m;
  o.meters_per_pixel = a.meters_per_pixel;
  o.distance_m = a.distance_m;
  if (a.boresight == "mean")
    o.boresight = Boresight::Mean;
  else if (a.boresight == "first")
    o.boresight = Boresight::FirstFrame;
  else
    o.boresight = Boresight::Reference;
  const auto r = cmd_track(o, a.out);
  std::cout << stats_report(r.stats, nullptr);
  return 0;
}

int run_stats_cmd(const std::string& in, int precision) {
  const auto r = run_stats(read_pointing_csv(in));
  std::cout << stats_report(r.stats, &r.fit, precision);
  return 0;
}

int run_link(const LinkArgs& a) {
  LinkBudgetOptions o;
  o.geometry = {a.range_m, a.divergence_rad, a.aperture_m, {}};
  o.sigma_mrad = a.sigma_mrad;
  o.samples = a.samples;
  o.seed = a.seed;
  o.curve_start_m = a.curve_start_m;
  o.curve_end_m = a.curve_end_m;
  o.curve_points = a.curve_points;
  const auto r = cmd_linkbudget(o, a.out);
  // Footprint smaller than the aperture: the far-field formula reports a gain.
  auto near = [&](double range) { return a.divergence_rad * range < a.aperture_m; };
  if (near(a.range_m) || (a.curve_start_m && near(std::min(*a.curve_start_m, *a.curve_end_m))))
    std::cerr << "warning: beam footprint smaller than the aperture at some ranges; "
                 "geometric loss is not meaningful there\n";
  write_budget_csv(std::cout, r.point);
  return 0;
}

int run_compare(const CompareArgs& a) {
  const auto metric = a.metric == "angular" ? CompareMetric::Angular
                                            : CompareMetric::ReceiverPlane;
  const auto r = cmd_compare(a.measured, a.predicted, a.out, metric);
  std::cout << comparison_text(r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointing error and link budget toolkit for optical links from "
               "vibrating platforms"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "integrate a platform config");
  simulate->add_option("--config", sim.config, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--seed", sim.seed, "overrides sim.seed");
  simulate->add_option("--out", sim.out, "overrides output.directory");
  simulate->add_option("--set", sim.set, "extra key=value assignment")
      ->allow_extra_args(false);

  TrackArgs trk;
  auto* track = app.add_subcommand("track", "extract pointing from frames");
  track->add_option("--frames", trk.frames, "directory of .pgm frames")
      ->required();
  track->add_option("--fps", trk.fps, "frame rate")->capture_default_str();
  track->add_option("--threshold", trk.threshold, "detection threshold 0-255")
      ->capture_default_str();
  track->add_option("--ref-frame", trk.ref_frame,
                    "vibration-free reference frame");
  auto* diam = track->add_option("--ref-diameter-m", trk.ref_diameter_m,
                                 "physical footprint diameter of the reference");
  auto* mpp = track->add_option("--meters-per-pixel", trk.meters_per_pixel,
                                "known scale, skips calibration");
  diam->excludes(mpp);
  track->add_option("--boresight", trk.boresight, "mean | first | reference")
      ->check(CLI::IsMember({"mean", "first", "reference"}))
      ->capture_default_str();
  track->add_option("--distance-m", trk.distance_m,
                    "transmitter to receiver-plane distance")
      ->required();
  track->add_option("--out", trk.out, "output directory")->capture_default_str();

  std::string stats_in;
  int stats_precision = 9;
  auto* st = app.add_subcommand("stats", "summarize a pointing CSV");
  st->add_option("--in", stats_in, "pointing CSV")->required();
  st->add_option("--precision", stats_precision, "significant digits")
      ->capture_default_str();

  LinkArgs lk;
  auto* link = app.add_subcommand("linkbudget", "geometric and pointing loss");
  link->add_option("--range-m", lk.range_m, "link range L")->required();
  link->add_option("--divergence-rad", lk.divergence_rad, "full beam divergence")
      ->required();
  link->add_option("--aperture-m", lk.aperture_m, "receiver diameter")
      ->required();
  link->add_option("--sigma-mrad", lk.sigma_mrad, "Rayleigh jitter scale");
  link->add_option("--samples", lk.samples, "Monte Carlo samples")
      ->capture_default_str();
  link->add_option("--seed", lk.seed, "Monte Carlo seed")->capture_default_str();
  link->add_option("--curve-start-m", lk.curve_start_m, "sweep start range");
  link->add_option("--curve-end-m", lk.curve_end_m, "sweep end range");
  link->add_option("--curve-points", lk.curve_points, "sweep points")
      ->capture_default_str();
  link->add_option("--out", lk.out, "output directory")->capture_default_str();

  CompareArgs cmp;
  auto* comp = app.add_subcommand("compare", "measured vs predicted pointing");
  comp->add_option("--measured", cmp.measured, "measured pointing CSV")
      ->required();
  comp->add_option("--predicted", cmp.predicted, "predicted pointing CSV")
      ->required();
  comp->add_option("--metric", cmp.metric, "receiver-plane | angular")
      ->check(CLI::IsMember({"receiver-plane", "angular"}))
      ->capture_default_str();
  comp->add_option("--out", cmp.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*track) return run_track_cmd(trk);
    if (*st) return run_stats_cmd(stats_in, stats_precision);
    if (*link) return run_link(lk);
    if (*comp) return run_compare(cmp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

#pragma once

// Batch pipelines behind the command line subcommands. Each `run_*` computes
// results in memory; each `cmd_*` additionally writes its artifacts to a
// directory and returns the same result.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fsopoint/config.hpp"
#include "fsopoint/csv.hpp"
#include "fsopoint/dynamics.hpp"
#include "fsopoint/linkbudget.hpp"
#include "fsopoint/pointing.hpp"
#include "fsopoint/tracker.hpp"

namespace fsopoint {

// simulate -------------------------------------------------------------------

/// Forcing assembled from the enabled sources. The wind stream is seeded from
/// `sim.seed` and covers settle + duration.
ForcingFunction build_forcing(const RunConfig& config);

struct SimulationResult {
  Trajectory trajectory;  ///< recorded window, decimated, t from 0
  PointingSeries pointing;
  StatsSummary stats;
  FitResult fit;
  LateralBreakdown breakdown;
};

SimulationResult run_simulation(const RunConfig& config);

/// trajectory.csv, pointing.csv, report.txt in `out_dir`.
SimulationResult cmd_simulate(const RunConfig& config,
                              const std::filesystem::path& out_dir);

// track ----------------------------------------------------------------------

struct TrackOptions {
  std::filesystem::path frames_dir;
  double fps = 30.0;
  int threshold = 128;
  /// Calibration frame; the first frame of the series when absent.
  std::optional<std::filesystem::path> ref_frame;
  std::optional<double> ref_diameter_m;
  std::optional<double> meters_per_pixel;  ///< skips calibration
  Boresight boresight = Boresight::Mean;
  double distance_m = 0.0;  ///< transmitter to receiver plane
};

struct TrackResult {
  Calibration calibration;
  TrackedSeries tracked;
  PointingSeries pointing;
  StatsSummary stats;
};

TrackResult run_track(const TrackOptions& options);

/// pointing.csv and report.txt in `out_dir`.
TrackResult cmd_track(const TrackOptions& options,
                      const std::filesystem::path& out_dir);

// stats ----------------------------------------------------------------------

struct StatsResult {
  StatsSummary stats;
  FitResult fit;
};

StatsResult run_stats(const PointingSeries& series);

std::string stats_report(const StatsSummary& s, const FitResult* fit,
                         int precision = 9);

// linkbudget -----------------------------------------------------------------

struct LinkBudgetOptions {
  LinkGeometry geometry;
  std::optional<double> sigma_mrad;  ///< Rayleigh jitter scale
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<double> curve_start_m;
  std::optional<double> curve_end_m;
  std::size_t curve_points = 10;
};

struct LinkBudgetResult {
  std::vector<BudgetRow> point;  ///< one row at the configured range
  std::vector<BudgetRow> curve;  ///< empty unless a sweep was requested
};

LinkBudgetResult run_linkbudget(const LinkBudgetOptions& options);

/// budget.csv, plus curve.csv when a sweep was requested.
LinkBudgetResult cmd_linkbudget(const LinkBudgetOptions& options,
                                const std::filesystem::path& out_dir);

// compare --------------------------------------------------------------------

enum class CompareMetric {
  ReceiverPlane,  ///< magnitude of the lateral displacement, mm
  Angular,        ///< magnitude of the angular error, mrad
};

struct ComparisonReport {
  CompareMetric metric = CompareMetric::ReceiverPlane;
  StatsSummary measured;
  StatsSummary predicted;
  double measured_rho = 0.0;   ///< per `metric`
  double predicted_rho = 0.0;
  double prediction_error_percent = 0.0;
  // predicted - measured
  double delta_mu_theta_x = 0.0;
  double delta_mu_theta_y = 0.0;
  double delta_sigma_theta_x = 0.0;
  double delta_sigma_theta_y = 0.0;
  double delta_mu_rho = 0.0;
};

ComparisonReport compare(const PointingSeries& measured,
                         const PointingSeries& predicted,
                         CompareMetric metric = CompareMetric::ReceiverPlane);

std::string comparison_text(const ComparisonReport& r);

/// comparison.txt and comparison.csv in `out_dir`.
ComparisonReport cmd_compare(const std::filesystem::path& measured_csv,
                             const std::filesystem::path& predicted_csv,
                             const std::filesystem::path& out_dir,
                             CompareMetric metric = CompareMetric::ReceiverPlane);

}  // namespace fsopoint

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsopoint/dynamics.hpp"
#include "fsopoint/linkbudget.hpp"
#include "fsopoint/pointing.hpp"

namespace fsopoint {

inline constexpr int kDefaultCsvPrecision = 9;

inline constexpr const char* kPointingHeader =
    "t_s,theta_x_mrad,theta_y_mrad,rho_mrad,lateral_x_m,lateral_y_m";
inline constexpr const char* kTrajectoryHeader =
    "t_s,x_m,y_m,z_m,roll_rad,pitch_rad,yaw_rad,"
    "vx_mps,vy_mps,vz_mps,roll_rate_radps,pitch_rate_radps,yaw_rate_radps";
inline constexpr const char* kBudgetHeader =
    "L_m,geometric_db,expected_pointing_db,total_db";

/// %.<precision>g
std::string format_number(double value, int precision = kDefaultCsvPrecision);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          int precision = kDefaultCsvPrecision);
void write_pointing_csv(std::ostream& out, const PointingSeries& series,
                        int precision = kDefaultCsvPrecision);

/// Reads the pointing schema. Columns are located by header name; a missing
/// column or a rho inconsistent with the angles is a data error. The link
/// range is recovered from lateral / theta.
PointingSeries read_pointing_csv(const std::filesystem::path& path);

struct BudgetRow {
  double range_m = 0.0;
  double geometric_db = 0.0;
  double expected_pointing_db = 0.0;  ///< 0 when no jitter was given
  double total_db = 0.0;
};

void write_budget_csv(std::ostream& out, const std::vector<BudgetRow>& rows,
                      int precision = kDefaultCsvPrecision);

}  // namespace fsopoint

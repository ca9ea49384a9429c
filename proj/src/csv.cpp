#include "fsopoint/csv.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fsopoint/error.hpp"

namespace fsopoint {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
      cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string format_number(double value, int precision) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          int precision) {
  out << kTrajectoryHeader << '\n';
  for (const auto& s : traj.states) {
    out << format_number(s.t, precision);
    for (int i = 0; i < kDofCount; ++i)
      out << ',' << format_number(s.q[i], precision);
    for (int i = 0; i < kDofCount; ++i)
      out << ',' << format_number(s.qdot[i], precision);
    out << '\n';
  }
}

void write_pointing_csv(std::ostream& out, const PointingSeries& series,
                        int precision) {
  out << kPointingHeader << '\n';
  for (const auto& s : series.samples) {
    out << format_number(s.t, precision) << ','
        << format_number(s.theta_x_mrad, precision) << ','
        << format_number(s.theta_y_mrad, precision) << ','
        << format_number(s.rho_mrad, precision) << ','
        << format_number(s.lateral_x_m, precision) << ','
        << format_number(s.lateral_y_m, precision) << '\n';
  }
}

PointingSeries read_pointing_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Data, path.string() + ": cannot open");
  const std::string name = path.string();

  std::string line;
  if (!std::getline(in, line) || split(line, ',').empty())
    throw Error(ErrorKind::InsufficientData, name + ": empty file");

  static constexpr std::array<const char*, 6> kColumns{
      "t_s", "theta_x_mrad", "theta_y_mrad",
      "rho_mrad", "lateral_x_m", "lateral_y_m"};
  const auto header = split(line, ',');
  std::array<std::size_t, 6> col{};
  for (std::size_t k = 0; k < kColumns.size(); ++k) {
    std::size_t i = 0;
    while (i < header.size() && header[i] != kColumns[k]) ++i;
    if (i == header.size())
      throw Error(ErrorKind::Data,
                  name + ": missing column '" + kColumns[k] + "'");
    col[k] = i;
  }

  PointingSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line, ',');
    std::array<double, 6> v{};
    for (std::size_t k = 0; k < kColumns.size(); ++k) {
      if (col[k] >= cells.size())
        throw Error(ErrorKind::Data, name + ":" + std::to_string(line_no) +
                                         ": missing value for '" +
                                         kColumns[k] + "'");
      try {
        std::size_t used = 0;
        v[k] = std::stod(cells[col[k]], &used);
        if (used != cells[col[k]].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(ErrorKind::Data, name + ":" + std::to_string(line_no) +
                                         ": bad number in '" + kColumns[k] +
                                         "'");
      }
    }
    PointingSample s{v[0], v[1], v[2], v[3], v[4], v[5]};
    const double rho = std::hypot(s.theta_x_mrad, s.theta_y_mrad);
    if (std::abs(rho - s.rho_mrad) > 1e-6 * std::max(1.0, rho))
      throw Error(ErrorKind::Data, name + ":" + std::to_string(line_no) +
                                       ": rho_mrad disagrees with the angles");
    series.samples.push_back(s);
  }
  if (series.samples.empty())
    throw Error(ErrorKind::InsufficientData, name + ": no data rows");

  for (const auto& s : series.samples) {
    if (s.rho_mrad > 0.0) {
      series.link_range_m =
          1000.0 * std::hypot(s.lateral_x_m, s.lateral_y_m) / s.rho_mrad;
      break;
    }
  }
  return series;
}

void write_budget_csv(std::ostream& out, const std::vector<BudgetRow>& rows,
                      int precision) {
  out << kBudgetHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.range_m, precision) << ','
        << format_number(r.geometric_db, precision) << ','
        << format_number(r.expected_pointing_db, precision) << ','
        << format_number(r.total_db, precision) << '\n';
  }
}

}  // namespace fsopoint

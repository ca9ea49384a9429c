// Regenerates the shipped measurement fixtures:
//   <data>/measured_pointing.csv   summary-matched drone series
//   <data>/predicted_pointing.csv  the same series scaled to the predicted mean
// and, with --frames, a rendered frame sequence plus ref.pgm for `track`.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "fsopoint/csv.hpp"
#include "fsopoint/error.hpp"
#include "fsopoint/fixtures.hpp"

namespace fs = std::filesystem;
using namespace fsopoint;

namespace {

constexpr double kPredictedMeanMm = 11.5;

void write_csv(const fs::path& path, const PointingSeries& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Usage, path.string() + ": cannot write");
  write_pointing_csv(out, series);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate measurement fixtures"};
  std::string data_dir;
  std::string frames_dir;
  app.add_option("--data", data_dir, "fixture CSV directory")->required();
  app.add_option("--frames", frames_dir,
                 "also render frames into DIR/frames and DIR/ref.pgm");
  CLI11_PARSE(app, argc, argv);

  try {
    const MatchedFixture m = make_matched_fixture();
    const StatsSummary s = stats(m.series);
    const PointingSeries predicted =
        scale_series(m.series, kPredictedMeanMm / s.mu_lateral_mm);

    fs::create_directories(data_dir);
    write_csv(fs::path(data_dir) / "measured_pointing.csv", m.series);
    write_csv(fs::path(data_dir) / "predicted_pointing.csv", predicted);
    std::cout << std::setprecision(9) << "seed " << m.seed << ", correlation "
              << m.correlation << ", wall distance " << m.wall_distance_m
              << " m\n";

    if (!frames_dir.empty()) {
      const FrameFixture ff = render_frame_fixture(m.series, 30.0);
      const fs::path dir = fs::path(frames_dir) / "frames";
      fs::create_directories(dir);
      for (const auto& f : ff.frames) {
        std::ostringstream name;
        name << "frame_" << std::setw(4) << std::setfill('0') << f.index
             << ".pgm";
        write_pgm(dir / name.str(), f);
      }
      write_pgm(fs::path(frames_dir) / "ref.pgm", ff.reference);
      std::cout << ff.frames.size() << " frames, reference diameter "
                << ff.ref_diameter_m << " m\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 0;
}

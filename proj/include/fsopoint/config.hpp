#pragma once

// Run configuration: a flat, line-oriented `section.key = value` text format.
// '#' starts a comment. Unknown keys and invalid values are reported together,
// one line per offending field.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fsopoint/dynamics.hpp"
#include "fsopoint/forcing.hpp"
#include "fsopoint/linkbudget.hpp"
#include "fsopoint/pointing.hpp"

namespace fsopoint {

enum class InitialState {
  Zero,
  Equilibrium,  ///< static deflection under the nominal forcing
};

struct SimSettings {
  double duration_s = 5.0;
  double dt_s = 1e-4;
  std::uint64_t seed = 0;
  double settle_s = 0.0;  ///< integrated and discarded before recording
  InitialState initial = InitialState::Zero;
  double divergence_bound = 1e3;
};

struct OutputSettings {
  std::string directory = "out";
  int precision = 9;
  int stride = 1;  ///< keep every stride-th state in the outputs
};

struct RunConfig {
  PlatformParams platform;
  bool propeller_enabled = false;
  PropellerParams propeller;
  bool wind_enabled = false;
  WindParams wind;
  LinkGeometry link{10.0, 1e-3, 0.037, {}};
  ProjectionMode projection = ProjectionMode::AngularPlusLinear;
  SimSettings sim;
  OutputSettings output;
};

bool operator==(const RunConfig& a, const RunConfig& b);

std::string_view to_string(ProjectionMode m);
std::string_view to_string(InitialState s);

/// `overrides` are extra `key=value` assignments applied after `text`.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

/// Every key, in canonical order, with round-trip precision.
std::string serialize_config(const RunConfig& config);

}  // namespace fsopoint

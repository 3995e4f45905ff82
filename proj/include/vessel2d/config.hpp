#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vessel2d/scenarios.hpp"
#include "vessel2d/scheme.hpp"

namespace vessel2d {

struct OutputPlan {
  long probe_every = 1;           // steps between probe rows; 0 disables the step cadence
  double probe_interval = 0.0;    // s between probe rows; 0 disables the time cadence
  std::vector<double> snapshot_times;  // s
  long snapshot_every = 0;        // steps between surface snapshots; 0 disables
  bool final_snapshot = true;
};

struct RunConfig {
  ScenarioConfig scenario;
  NumericsConfig numerics;
  OutputPlan output;
  int threads = 1;

  /// Full validation, including geometry validity. Throws ConfigError.
  void validate() const;
};

/// SI scale factor of a unit tag; throws ConfigError for unknown tags or a tag of the wrong kind.
/// Kinds: length, area, pressure, time, angle, velocity, density, viscosity, acceleration, dimensionless.
double unit_factor(const std::string& unit, const std::string& kind);

/// Parses a document. Quantities are plain SI numbers or {"value": x, "unit": "..."}.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// SI serialization with explicit unit tags; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

/// Default document for a preset.
RunConfig default_run_config(const std::string& preset);

}  // namespace vessel2d

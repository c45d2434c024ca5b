#pragma once

// Scenario configuration: a flat `key = value` text grammar (see
// docs/config.md), validation against the physical parameter ranges, and
// the built-in figure presets.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ffwd/grid.hpp"
#include "ffwd/potentials.hpp"
#include "ffwd/schedule.hpp"

namespace ffwd::io {

struct ScenarioConfig {
  std::string name = "scenario";
  BarrierKind model = BarrierKind::Eckart;
  double l = 0.1;
  double a = 1.0;
  double h_min = 1.0;
  double h_max = 2.0;
  std::vector<double> k{1.2};
  double vbar = 1.0;
  double T_FF = 10.0;
  Profile profile = Profile::Cosine;
  double R0 = 0.0;
  double x_min = -1.5;
  double x_max = 1.5;
  Index nx = 3001;
  int nt = 100;              // time intervals on [0, T_FF]
  double c = 0.0;
  int field_x_stride = 10;   // export every n-th node of field lattices
  double tdse_dt = 0.01;
  int tdse_record_every = 10;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending line.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Every key, fixed order, doubles with 17 significant digits.
std::string emit_config(const ScenarioConfig& cfg);

/// Throws ConfigError with an actionable message.
void validate(const ScenarioConfig& cfg);

BarrierModel make_model(const ScenarioConfig& cfg);
FFSchedule make_schedule(const ScenarioConfig& cfg);
/// Window grid; delta supports are registered as derivative breaks.
Grid make_grid(const ScenarioConfig& cfg);

/// Doubles spatial and temporal resolution.
ScenarioConfig refined(const ScenarioConfig& cfg);

enum class Command { Stationary, DriveFields, Transport, Verify };
std::string to_string(Command cmd);

struct FigurePreset {
  ScenarioConfig config;
  Command command;
};
/// Presets 1..8. Throws ConfigError otherwise.
FigurePreset figure_preset(int number);

}  // namespace ffwd::io

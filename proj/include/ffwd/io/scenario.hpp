#pragma once

// Scenario runner: evaluates one command for every k of a configuration,
// checks the physical invariants and writes the artifacts plus a manifest.

#include <filesystem>
#include <string>
#include <vector>

#include "ffwd/io/config.hpp"
#include "ffwd/io/export.hpp"

namespace ffwd::io {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  int threads = 1;
  bool refine = false;
};

struct InvariantCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool lower_bound = false;  // true: value >= limit, otherwise value <= limit
  bool passed() const { return lower_bound ? value >= limit : value <= limit; }
};

struct RunManifest {
  std::string version;
  Command command = Command::Transport;
  ScenarioConfig config;  // after refinement
  std::vector<WrittenFile> files;
  std::vector<InvariantCheck> checks;
  double wall_seconds = 0.0;

  bool ok() const;
};

/// Throws ConfigError for an invalid configuration, IOError on export
/// failure, and lets module errors through with the offending k prepended.
/// Invariant failures do not throw; they are reported in the manifest.
RunManifest run_scenario(const ScenarioConfig& config, Command command, const RunOptions& options);

/// git-describe-style version of this build.
std::string version();

/// Output file name fragment for a wavenumber, e.g. "k1.2".
std::string k_label(double k);

}  // namespace ffwd::io

// Command-line front end. Exit status: 0 success, 1 numerical failure,
// 2 invariant failure, 3 configuration error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ffwd/errors.hpp"
#include "ffwd/io/scenario.hpp"

namespace {

constexpr int kExitInvariant = 2;
constexpr int kExitConfig = 3;

void report(const ffwd::io::RunManifest& m, const std::filesystem::path& out) {
  for (const auto& c : m.checks)
    std::cout << (c.passed() ? "ok    " : "FAIL  ") << c.name << ": " << ffwd::io::format_shortest(c.value)
              << (c.lower_bound ? " >= " : " <= ") << ffwd::io::format_shortest(c.limit) << '\n';
  std::cout << m.files.size() << " files written to " << out.string() << " in " << m.wall_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast-forward driving of 1D tunneling: data generator"};
  app.set_version_flag("--version", ffwd::io::version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  ffwd::io::RunOptions opts;
  int figure = 0;
  bool print_config = false;
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", opts.threads, "Worker threads over k values")->capture_default_str();
  app.add_flag("--refine", opts.refine, "Double the spatial and temporal resolution");
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

  struct Sub {
    const char* name;
    const char* help;
    ffwd::io::Command cmd;
  };
  const Sub subs[] = {
      {"stationary", "Transmission and reflection over the parameter range", ffwd::io::Command::Stationary},
      {"drive-fields", "Driving potentials and electric field on a (t, x) lattice", ffwd::io::Command::DriveFields},
      {"transport", "Fast-forward transmission, reflection and currents versus time", ffwd::io::Command::Transport},
      {"verify", "Propagate the driven Schroedinger equation and compare", ffwd::io::Command::Verify},
  };
  std::optional<ffwd::io::Command> chosen;
  for (const Sub& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config_path, "Configuration file (key = value)");
    sc->callback([&chosen, cmd = s.cmd] { chosen = cmd; });
  }
  CLI::App* fig = app.add_subcommand("figure", "Run a built-in figure preset");
  fig->add_option("number", figure, "Preset 1..8")->required()->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    ffwd::io::ScenarioConfig cfg;
    ffwd::io::Command cmd;
    if (fig->parsed()) {
      const ffwd::io::FigurePreset preset = ffwd::io::figure_preset(figure);
      cfg = preset.config;
      cmd = preset.command;
    } else {
      if (!config_path.empty()) cfg = ffwd::io::load_config(config_path);
      cmd = *chosen;
    }
    if (print_config) {
      std::cout << ffwd::io::emit_config(opts.refine ? ffwd::io::refined(cfg) : cfg);
      return 0;
    }
    const ffwd::io::RunManifest m = ffwd::io::run_scenario(cfg, cmd, opts);
    report(m, opts.out_dir);
    return m.ok() ? 0 : kExitInvariant;
  } catch (const ffwd::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ffwd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

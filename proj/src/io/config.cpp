#include "ffwd/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ffwd/errors.hpp"
#include "ffwd/io/export.hpp"

namespace ffwd::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  return out;
}

long parse_integer(const std::string& key, const std::string& value) {
  long out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError("'" + key + "' expects a comma-separated list of numbers");
  return out;
}

BarrierKind parse_model(const std::string& value) {
  if (value == "eckart") return BarrierKind::Eckart;
  if (value == "double_delta") return BarrierKind::DoubleDelta;
  if (value == "free") return BarrierKind::Free;
  throw ConfigError("model must be 'eckart', 'double_delta' or 'free', got '" + value + "'");
}

bool is_node(const Grid& g, double x) {
  try {
    g.node(x);
    return true;
  } catch (const StepSizeError&) {
    return false;
  }
}

std::vector<double> arange(double first, double step, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(std::round((first + step * i) * 1e12) / 1e12);
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + body + "'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": '" + key + "' has no value");
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    try {
      if (key == "name") cfg.name = value;
      else if (key == "model") cfg.model = parse_model(value);
      else if (key == "l") cfg.l = parse_double(key, value);
      else if (key == "a") cfg.a = parse_double(key, value);
      else if (key == "h_min") cfg.h_min = parse_double(key, value);
      else if (key == "h_max") cfg.h_max = parse_double(key, value);
      else if (key == "k") cfg.k = parse_list(key, value);
      else if (key == "vbar") cfg.vbar = parse_double(key, value);
      else if (key == "T_FF") cfg.T_FF = parse_double(key, value);
      else if (key == "profile") cfg.profile = parse_profile(value);
      else if (key == "R0") cfg.R0 = parse_double(key, value);
      else if (key == "x_min") cfg.x_min = parse_double(key, value);
      else if (key == "x_max") cfg.x_max = parse_double(key, value);
      else if (key == "nx") cfg.nx = parse_integer(key, value);
      else if (key == "nt") cfg.nt = static_cast<int>(parse_integer(key, value));
      else if (key == "c") cfg.c = parse_double(key, value);
      else if (key == "field_x_stride") cfg.field_x_stride = static_cast<int>(parse_integer(key, value));
      else if (key == "tdse_dt") cfg.tdse_dt = parse_double(key, value);
      else if (key == "tdse_record_every") cfg.tdse_record_every = static_cast<int>(parse_integer(key, value));
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  auto num = [](double v) { return format_shortest(v); };
  out << "name = " << cfg.name << '\n';
  out << "model = " << to_string(cfg.model) << '\n';
  out << "l = " << num(cfg.l) << '\n';
  out << "a = " << num(cfg.a) << '\n';
  out << "h_min = " << num(cfg.h_min) << '\n';
  out << "h_max = " << num(cfg.h_max) << '\n';
  out << "k = ";
  for (std::size_t i = 0; i < cfg.k.size(); ++i) out << (i ? ", " : "") << num(cfg.k[i]);
  out << '\n';
  out << "vbar = " << num(cfg.vbar) << '\n';
  out << "T_FF = " << num(cfg.T_FF) << '\n';
  out << "profile = " << to_string(cfg.profile) << '\n';
  out << "R0 = " << num(cfg.R0) << '\n';
  out << "x_min = " << num(cfg.x_min) << '\n';
  out << "x_max = " << num(cfg.x_max) << '\n';
  out << "nx = " << cfg.nx << '\n';
  out << "nt = " << cfg.nt << '\n';
  out << "c = " << num(cfg.c) << '\n';
  out << "field_x_stride = " << cfg.field_x_stride << '\n';
  out << "tdse_dt = " << num(cfg.tdse_dt) << '\n';
  out << "tdse_record_every = " << cfg.tdse_record_every << '\n';
  return out.str();
}

BarrierModel make_model(const ScenarioConfig& cfg) {
  try {
    switch (cfg.model) {
      case BarrierKind::Eckart: return BarrierModel::eckart(cfg.l);
      case BarrierKind::DoubleDelta: return BarrierModel::double_delta(cfg.a, cfg.h_min, cfg.h_max);
      case BarrierKind::Free: break;
    }
  } catch (const RangeError& e) {
    throw ConfigError(e.what());
  }
  return BarrierModel::free();
}

FFSchedule make_schedule(const ScenarioConfig& cfg) { return {cfg.vbar, cfg.T_FF, cfg.profile, cfg.R0}; }

Grid make_grid(const ScenarioConfig& cfg) {
  std::vector<double> breaks;
  if (cfg.model == BarrierKind::DoubleDelta) breaks = {-cfg.a, cfg.a};
  return Grid::uniform(cfg.x_min, cfg.x_max, cfg.nx, breaks);
}

void validate(const ScenarioConfig& cfg) {
  const BarrierModel model = make_model(cfg);
  const BarrierGeometry geo = barrier_geometry(model);
  if (cfg.k.empty()) throw ConfigError("k: at least one wavenumber is required");
  for (double k : cfg.k)
    if (!(k > geo.k_threshold))
      throw ConfigError("k = " + format_shortest(k) + " does not propagate; need k > " + format_shortest(geo.k_threshold) +
                        " for model " + to_string(cfg.model));
  try {
    validate(make_schedule(cfg));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " (set T_FF > 0 and vbar >= 0)");
  }
  const ParameterRange range = model.admitted();
  const double r_end = cfg.R0 + cfg.vbar * cfg.T_FF;
  if (!range.contains(cfg.R0) || !range.contains(r_end))
    throw ConfigError("parameter path R0 = " + format_shortest(cfg.R0) + " -> R0 + vbar*T_FF = " + format_shortest(r_end) +
                      " leaves the admitted range [" + format_shortest(range.lo) + ", " + format_shortest(range.hi) +
                      "]; reduce vbar or T_FF");
  if (!(cfg.x_max > cfg.x_min)) throw ConfigError("x_max must exceed x_min");
  if (cfg.nx < 11) throw ConfigError("nx must be at least 11");
  if (cfg.nt < 1) throw ConfigError("nt must be at least 1");
  if (cfg.field_x_stride < 1) throw ConfigError("field_x_stride must be at least 1");
  if (!(cfg.tdse_dt > 0.0)) throw ConfigError("tdse_dt must be positive");
  if (cfg.tdse_record_every < 1) throw ConfigError("tdse_record_every must be at least 1");
  const Grid grid = Grid::uniform(cfg.x_min, cfg.x_max, cfg.nx);
  for (double x : {geo.x1, geo.x2, cfg.c}) {
    if (x <= cfg.x_min || x >= cfg.x_max || !is_node(grid, x))
      throw ConfigError("x = " + format_shortest(x) +
                        " (saturation edge or base point c) must be an interior grid node; adjust x_min, x_max or nx");
  }
}

ScenarioConfig refined(const ScenarioConfig& cfg) {
  ScenarioConfig r = cfg;
  r.nx = (cfg.nx - 1) * 2 + 1;
  r.nt = cfg.nt * 2;
  r.field_x_stride = cfg.field_x_stride * 2;
  r.tdse_dt = cfg.tdse_dt / 2.0;
  r.tdse_record_every = cfg.tdse_record_every * 2;
  return r;
}

std::string to_string(Command cmd) {
  switch (cmd) {
    case Command::Stationary: return "stationary";
    case Command::DriveFields: return "drive-fields";
    case Command::Transport: return "transport";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

FigurePreset figure_preset(int number) {
  ScenarioConfig eck;
  eck.model = BarrierKind::Eckart;
  eck.vbar = 1.0;
  eck.T_FF = 10.0;
  ScenarioConfig dd;
  dd.model = BarrierKind::DoubleDelta;
  dd.vbar = 1.0;
  dd.T_FF = 1.0;
  switch (number) {
    case 1: eck.name = "figure1"; eck.k = {1.2}; return {eck, Command::Stationary};
    case 2: eck.name = "figure2"; eck.k = arange(1.05, 0.05, 20); return {eck, Command::Transport};
    case 3: eck.name = "figure3"; eck.k = {1.2, 1.6, 1.8}; return {eck, Command::Transport};
    case 4: eck.name = "figure4"; eck.k = {1.2, 1.8}; return {eck, Command::DriveFields};
    case 5: dd.name = "figure5"; dd.k = {1.0}; return {dd, Command::Stationary};
    case 6: dd.name = "figure6"; dd.k = arange(0.1, 0.1, 20); return {dd, Command::Transport};
    case 7: dd.name = "figure7"; dd.k = {0.4, 0.8, 1.2}; return {dd, Command::Transport};
    case 8: dd.name = "figure8"; dd.k = {0.4, 1.2}; return {dd, Command::DriveFields};
    default: break;
  }
  throw ConfigError("figure number must be between 1 and 8, got " + std::to_string(number));
}

}  // namespace ffwd::io

#include <doctest.h>

#include <algorithm>
#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "ffwd/errors.hpp"
#include "ffwd/io/config.hpp"
#include "ffwd/io/export.hpp"
#include "ffwd/io/scenario.hpp"

using namespace ffwd;
using namespace ffwd::io;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ffwd_test_" + name);
  fs::remove_all(p);
  return p;
}

ScenarioConfig small_eckart() {
  ScenarioConfig c;
  c.k = {1.2, 1.5};
  c.T_FF = 4.0;
  c.nx = 1201;
  c.nt = 4;
  return c;
}

std::string message_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(1.05) == "1.05");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, i % 20 - 10);
    CHECK(std::stod(format_double(v)) == v);
    CHECK(std::stod(format_shortest(v)) == v);
  }
  CHECK(k_label(1.2) == "k1.2");
}

TEST_CASE("formatting ignores the process locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) CHECK(format_double(1.5) == "1.5");
  std::setlocale(LC_NUMERIC, saved.c_str());
  CHECK(format_shortest(2.25) == "2.25");
}

TEST_CASE("config emit/parse round trip") {
  ScenarioConfig c = small_eckart();
  c.name = "round";
  c.k = {1.05, 1.1, 1.9999999999999998};
  c.vbar = 0.3;
  c.profile = Profile::Uniform;
  c.c = 0.1;
  CHECK(parse_config(emit_config(c)) == c);
  for (int n = 1; n <= 8; ++n) {
    const ScenarioConfig p = figure_preset(n).config;
    CHECK(parse_config(emit_config(p)) == p);
    CHECK_NOTHROW(validate(p));
  }
}

TEST_CASE("config grammar") {
  const ScenarioConfig c = parse_config(
      "# comment\n"
      "model = double_delta\n"
      "  k = 0.4, 0.8 ,1.2  # trailing comment\n"
      "\n"
      "T_FF = 1\n");
  CHECK(c.model == BarrierKind::DoubleDelta);
  CHECK(c.k == std::vector<double>{0.4, 0.8, 1.2});
  CHECK(c.T_FF == 1.0);
  CHECK(c.nx == ScenarioConfig{}.nx);
}

TEST_CASE("config errors name the line") {
  CHECK(message_of("k = 1.2\nbogus = 3\n").find("line 2") != std::string::npos);
  CHECK(message_of("k = 1.2\nk = 1.3\n").find("line 2") != std::string::npos);
  CHECK(message_of("vbar 1\n").find("line 1") != std::string::npos);
  CHECK(message_of("nx = 3.5\n").find("line 1") != std::string::npos);
  CHECK(message_of("T_FF = nan\n").find("line 1") != std::string::npos);
  CHECK(message_of("model = square\n").find("line 1") != std::string::npos);
  CHECK(message_of("k = 1.2,,1.3\n").find("line 1") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/ffwd.cfg"), ConfigError);
}

TEST_CASE("validation messages") {
  auto reject = [](ScenarioConfig c, const std::string& needle) {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      return;
    }
    FAIL("accepted invalid config containing " << needle);
  };
  ScenarioConfig c = small_eckart();
  c.k = {1.2, 0.9};
  reject(c, "k");
  c = small_eckart();
  c.T_FF = 0.0;
  reject(c, "T_FF");
  c = small_eckart();
  c.vbar = 3.0;  // R_final = 12 > 10
  reject(c, "R");
  c = small_eckart();
  c.nx = 1200;  // x = +-1 not on the grid
  reject(c, "node");
  c = small_eckart();
  c.x_max = c.x_min;
  reject(c, "x_max");
  c = small_eckart();
  c.model = BarrierKind::DoubleDelta;
  c.T_FF = 2.0;  // Gamma would reach 2
  reject(c, "R");
}

TEST_CASE("refinement doubles resolution and keeps nodes") {
  const ScenarioConfig c = small_eckart();
  const ScenarioConfig r = refined(c);
  CHECK(r.nx == 2401);
  CHECK(r.nt == 8);
  CHECK(r.tdse_dt == c.tdse_dt / 2);
  CHECK_NOTHROW(validate(r));
  const Grid g = make_grid(r);
  CHECK(g.x(1) - g.x(0) == doctest::Approx(0.00125));
}

TEST_CASE("figure presets") {
  CHECK(figure_preset(2).config.k.size() == 20);
  CHECK(figure_preset(2).config.k.front() == 1.05);
  CHECK(figure_preset(2).config.k.back() == 2.0);
  CHECK(figure_preset(6).config.model == BarrierKind::DoubleDelta);
  CHECK(figure_preset(6).config.k.back() == 2.0);
  CHECK(figure_preset(4).command == Command::DriveFields);
  CHECK(figure_preset(8).command == Command::DriveFields);
  CHECK(make_grid(figure_preset(7).config).is_break(make_grid(figure_preset(7).config).node(1.0)));
  CHECK_THROWS_AS(figure_preset(0), ConfigError);
  CHECK_THROWS_AS(figure_preset(9), ConfigError);
}

TEST_CASE("SHA-256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("CSV writer") {
  CsvWriter w({"a", "b"});
  w.row({1.0, 0.5});
  CHECK(w.str() == "a,b\n1,0.5\n");
  CHECK_THROWS_AS(w.row({1.0}), IOError);
}

TEST_CASE("atomic writes") {
  const fs::path dir = scratch("write") / "nested";
  const WrittenFile f = write_file(dir, "x.txt", "hello\n");
  CHECK(slurp(dir / "x.txt") == "hello\n");
  CHECK(f.bytes == 6);
  CHECK(f.sha256 == sha256_hex("hello\n"));
  CHECK_FALSE(fs::exists(dir / "x.txt.tmp"));
  CHECK_THROWS_AS(write_file("/proc/ffwd_no_such_dir", "x.txt", "x"), IOError);
  fs::remove_all(dir.parent_path());
}

TEST_CASE("scenario runs are deterministic across thread counts") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const RunManifest ma = run_scenario(small_eckart(), Command::Transport, {a, 1, false});
  const RunManifest mb = run_scenario(small_eckart(), Command::Transport, {b, 2, false});
  CHECK(ma.ok());
  CHECK(mb.ok());
  REQUIRE(ma.files.size() == mb.files.size());
  for (std::size_t i = 0; i < ma.files.size(); ++i) {
    CAPTURE(ma.files[i].name);
    CHECK(ma.files[i].name == mb.files[i].name);
    if (ma.files[i].name != "run.json") CHECK(ma.files[i].sha256 == mb.files[i].sha256);
  }
  CHECK(fs::exists(a / "transport_k1.2.csv"));
  CHECK(fs::exists(a / "summary.json"));
  CHECK(fs::exists(a / "run.json"));
  const std::string csv = slurp(a / "transport_k1.5.csv");
  CHECK(csv.rfind("t,R,T_ff,R_ff,delta_u,T_ad\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(parse_config(slurp(a / "config.txt")) == small_eckart());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("stationary and field commands") {
  const fs::path dir = scratch("cmds");
  ScenarioConfig c = small_eckart();
  c.k = {1.3};
  const RunManifest st = run_scenario(c, Command::Stationary, {dir, 1, false});
  CHECK(st.ok());
  CHECK(slurp(dir / "stationary_k1.3.csv").rfind("R,T,R_refl,t_r_re,t_r_im,r_f_re,r_f_im\n", 0) == 0);
  CHECK(fs::exists(dir / "potential.csv"));
  const RunManifest fd = run_scenario(c, Command::DriveFields, {dir, 1, false});
  CHECK(fd.ok());
  CHECK(slurp(dir / "fields_k1.3.csv").rfind("t,x,a_ff,v_ff,e_ff\n", 0) == 0);

  c.model = BarrierKind::DoubleDelta;
  c.k = {0.5};
  c.T_FF = 1.0;
  CHECK_THROWS_AS(run_scenario(c, Command::Verify, {dir, 1, false}), ConfigError);
  CHECK(run_scenario(c, Command::Stationary, {dir, 1, false}).ok());
  CHECK(fs::exists(dir / "strengths.csv"));
  fs::remove_all(dir);
}

TEST_CASE("invalid scenarios are rejected before any output") {
  const fs::path dir = scratch("bad");
  ScenarioConfig c = small_eckart();
  c.k = {0.5};
  CHECK_THROWS_AS(run_scenario(c, Command::Transport, {dir, 1, false}), ConfigError);
  CHECK_FALSE(fs::exists(dir));
}

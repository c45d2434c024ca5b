#include "ffwd/io/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include <json.hpp>

#include "ffwd/drive.hpp"
#include "ffwd/errors.hpp"
#include "ffwd/regularize.hpp"
#include "ffwd/stationary.hpp"
#include "ffwd/tdse.hpp"
#include "ffwd/transport.hpp"

#ifndef FFWD_VERSION
#define FFWD_VERSION "0.0.0-unknown"
#endif

namespace ffwd::io {

namespace {

using nlohmann::ordered_json;

namespace tol {
constexpr double stationary_unitarity = 1e-10;
constexpr double transport_identity = 1e-8;
constexpr double endpoint_transmission = 1e-8;
constexpr double endpoint_delta_u = 1e-9;
constexpr double field_silence = 1e-9;
constexpr double min_fidelity = 0.999;
constexpr double residual_order = 1.9;
}  // namespace tol

struct Output {
  std::string name;
  std::string content;
};

// Everything computed for one wavenumber.
struct KResult {
  double k = 0.0;
  std::vector<Output> outputs;
  std::vector<InvariantCheck> checks;
  ordered_json summary = ordered_json::object();
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> parameter_samples(const ParameterRange& range, int n) {
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(i == n ? range.hi : range.lo + (range.hi - range.lo) * i / n);
  return out;
}

KResult run_stationary(const ScenarioConfig& cfg, double k) {
  const BarrierModel model = make_model(cfg);
  const StationaryFamily family(model, k, make_grid(cfg));
  KResult res;
  res.k = k;
  CsvWriter w({"R", "T", "R_refl", "t_r_re", "t_r_im", "r_f_re", "r_f_im"});
  double worst = 0.0;
  for (double r : parameter_samples(model.admitted(), cfg.nt)) {
    const ScatteringSolution sol = family.solve(r);
    const TransportProbabilities p = stationary_transport(sol);
    worst = std::max(worst, std::abs(p.T + p.R - 1.0));
    w.row({r, p.T, p.R, sol.t_r.real(), sol.t_r.imag(), sol.r_f.real(), sol.r_f.imag()});
  }
  res.outputs.push_back({"stationary_" + k_label(k) + ".csv", w.str()});
  res.checks.push_back({"stationary unitarity |T+R-1| (" + k_label(k) + ")", worst, tol::stationary_unitarity});
  res.summary["max_unitarity_error"] = worst;
  return res;
}

KResult run_transport(const ScenarioConfig& cfg, double k) {
  const StationaryFamily family(make_model(cfg), k, make_grid(cfg));
  const FFSchedule sched = make_schedule(cfg);
  const std::vector<double> times = uniform_times(sched, cfg.nt);
  const TransportTrace tr = transport_trace(family, sched, times, cfg.c);

  KResult res;
  res.k = k;
  res.outputs.push_back({"transport_" + k_label(k) + ".csv", transport_csv(tr)});
  res.outputs.push_back({"currents_" + k_label(k) + ".csv", currents_csv(tr)});

  const BarrierGeometry geo = family.geometry();
  CsvWriter mod({"t", "t_r_ff_re", "t_r_ff_im", "r_f_ff_re", "r_f_ff_im"});
  for (double t : times) {
    const RegularizedState st = regularize(family, R_of_t(sched, t), cfg.c);
    const ModulatedCoefficients m = modulated_coefficients(st, sched, t, geo);
    mod.row({t, m.t_r_ff.real(), m.t_r_ff.imag(), m.r_f_ff.real(), m.r_f_ff.imag()});
  }
  res.outputs.push_back({"modulation_" + k_label(k) + ".csv", mod.str()});

  double identity = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    identity = std::max(identity, std::abs(tr.T_ff[i] + tr.R_ff[i] - 1.0 - tr.delta_u[i]));
  const double continuity = max_abs(tr.continuity_residual);
  const double endpoint = std::abs(tr.T_ff.back() - family.transport(sched.R_final()).T);
  const double du_ends = std::max(std::abs(tr.delta_u.front()), std::abs(tr.delta_u.back()));
  const std::string tag = " (" + k_label(k) + ")";
  res.checks.push_back({"T_ff+R_ff-1 = delta_u" + tag, identity, tol::transport_identity});
  res.checks.push_back({"continuity balance" + tag, continuity, tol::transport_identity});
  res.checks.push_back({"T_ff(T_FF) = T(R_final)" + tag, endpoint, tol::endpoint_transmission});
  res.checks.push_back({"delta_u at endpoints" + tag, du_ends, tol::endpoint_delta_u});

  res.summary["T_ff_final"] = tr.T_ff.back();
  res.summary["T_adiabatic_final"] = tr.T_adiabatic.back();
  res.summary["delta_u_initial"] = tr.delta_u.front();
  res.summary["delta_u_final"] = tr.delta_u.back();
  res.summary["max_abs_delta_u"] = max_abs(tr.delta_u);
  res.summary["max_identity_error"] = identity;
  res.summary["max_continuity_error"] = continuity;
  return res;
}

KResult run_drive_fields(const ScenarioConfig& cfg, double k) {
  const StationaryFamily family(make_model(cfg), k, make_grid(cfg));
  const FFSchedule sched = make_schedule(cfg);
  const DriveFieldSet set = drive_field_lattice(family, sched, uniform_times(sched, cfg.nt), cfg.c);
  const BarrierGeometry geo = family.geometry();

  KResult res;
  res.k = k;
  res.outputs.push_back({"fields_" + k_label(k) + ".csv", fields_csv(set, geo.x1, geo.x2, cfg.field_x_stride)});

  const Index i1 = set.grid.node(geo.x1);
  const Index i2 = set.grid.node(geo.x2);
  auto row_max = [&](Index row) {
    double m = 0.0;
    for (Index i = i1; i <= i2; ++i)
      if (!set.grid.is_break(i)) m = std::max(m, std::abs(set.e_ff(row, i)));
    return m;
  };
  const double interior = set.max_abs_field(std::max(std::abs(geo.x1), std::abs(geo.x2)));
  const double ends = std::max(row_max(0), row_max(set.e_ff.rows() - 1));
  res.summary["max_abs_e_ff"] = interior;
  res.summary["max_abs_e_ff_endpoints"] = ends;
  // Silence at the endpoints only holds for schedules that start and stop at rest.
  const bool at_rest = v_of_t(sched, 0.0) == 0.0 && v_dot(sched, 0.0) == 0.0 && v_of_t(sched, sched.T_FF) == 0.0 &&
                       v_dot(sched, sched.T_FF) == 0.0;
  if (at_rest) res.checks.push_back({"endpoint field silence (" + k_label(k) + ")", ends, tol::field_silence});
  return res;
}

KResult run_verify(const ScenarioConfig& cfg, double k) {
  if (cfg.model == BarrierKind::DoubleDelta)
    throw ConfigError("verify needs a smooth barrier (model = eckart or free); the double-delta model is checked "
                      "through its closed forms by the transport command");
  const BarrierModel model = make_model(cfg);
  const FFSchedule sched = make_schedule(cfg);
  PropagatorConfig pc;
  pc.x_min = cfg.x_min;
  pc.x_max = cfg.x_max;
  pc.nx = cfg.nx;
  pc.dt = cfg.tdse_dt;
  pc.record_every = cfg.tdse_record_every;
  pc.c = cfg.c;
  const FidelityTrace tr = propagate(model, k, sched, pc, true);
  const ResidualConvergence conv = residual_convergence(model, k, sched, 0.5 * sched.T_FF);

  KResult res;
  res.k = k;
  res.outputs.push_back({"fidelity_" + k_label(k) + ".csv", fidelity_csv(tr)});
  const double order = *std::min_element(conv.orders.begin(), conv.orders.end());
  const std::string tag = " (" + k_label(k) + ")";
  res.checks.push_back({"min windowed fidelity" + tag, tr.min_fidelity, tol::min_fidelity, true});
  res.checks.push_back({"residual convergence order" + tag, order, tol::residual_order, true});
  res.summary["min_fidelity"] = tr.min_fidelity;
  res.summary["final_target_fidelity"] = tr.final_target_fidelity;
  res.summary["max_relative_error"] = tr.max_relative_error;
  res.summary["max_balance_error"] = tr.max_balance_error;
  res.summary["max_residual"] = max_abs(tr.residual);
  res.summary["residual_levels"] = conv.residuals;
  res.summary["residual_orders"] = conv.orders;
  return res;
}

KResult run_one(const ScenarioConfig& cfg, Command cmd, double k) {
  switch (cmd) {
    case Command::Stationary: return run_stationary(cfg, k);
    case Command::Transport: return run_transport(cfg, k);
    case Command::DriveFields: return run_drive_fields(cfg, k);
    case Command::Verify: return run_verify(cfg, k);
  }
  throw ConfigError("unknown command");
}

// k-independent view of the barrier for the stationary command.
Output potential_table(const ScenarioConfig& cfg) {
  const BarrierModel model = make_model(cfg);
  const std::vector<double> rs = parameter_samples(model.admitted(), cfg.nt);
  if (cfg.model == BarrierKind::DoubleDelta) {
    CsvWriter w({"R", "left", "right"});
    for (double r : rs) {
      const DeltaStrengths s = delta_strengths(model, r);
      w.row({r, s.left, s.right});
    }
    return {"strengths.csv", w.str()};
  }
  const Grid g = make_grid(cfg);
  CsvWriter w({"x", "R", "v0"});
  for (double r : rs)
    for (Index i = 0; i < g.size(); i += cfg.field_x_stride) w.row({g.x(i), r, eval_v0(model, g.x(i), r)});
  return {"potential.csv", w.str()};
}

std::vector<KResult> run_all(const ScenarioConfig& cfg, Command cmd, int threads) {
  const std::size_t n = cfg.k.size();
  std::vector<KResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run_one(cfg, cmd, cfg.k[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nthreads = std::clamp<int>(threads, 1, static_cast<int>(n));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    const std::string where = "k = " + format_shortest(cfg.k[i]) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const IOError& e) {
      throw IOError(where + e.what());
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return results;
}

ordered_json check_json(const InvariantCheck& c) {
  return {{"name", c.name},
          {"value", c.value},
          {"limit", c.limit},
          {"relation", c.lower_bound ? ">=" : "<="},
          {"passed", c.passed()}};
}

}  // namespace

bool RunManifest::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed(); });
}

std::string version() { return FFWD_VERSION; }

std::string k_label(double k) { return "k" + format_shortest(k); }

RunManifest run_scenario(const ScenarioConfig& config, Command command, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.version = version();
  m.command = command;
  m.config = options.refine ? refined(config) : config;
  validate(m.config);
  if (options.threads < 1) throw ConfigError("--threads must be at least 1");

  const std::vector<KResult> results = run_all(m.config, command, options.threads);

  const std::string config_text = emit_config(m.config);
  m.files.push_back(write_file(options.out_dir, "config.txt", config_text));
  if (command == Command::Stationary) {
    const Output table = potential_table(m.config);
    m.files.push_back(write_file(options.out_dir, table.name, table.content));
  }
  ordered_json summary = ordered_json::object();
  summary["name"] = m.config.name;
  summary["command"] = to_string(command);
  summary["model"] = to_string(m.config.model);
  ordered_json per_k = ordered_json::array();
  for (const KResult& r : results) {
    for (const Output& o : r.outputs) m.files.push_back(write_file(options.out_dir, o.name, o.content));
    m.checks.insert(m.checks.end(), r.checks.begin(), r.checks.end());
    ordered_json entry = {{"k", r.k}};
    entry.update(r.summary);
    per_k.push_back(std::move(entry));
  }
  summary["runs"] = std::move(per_k);
  ordered_json checks = ordered_json::array();
  for (const InvariantCheck& c : m.checks) checks.push_back(check_json(c));
  summary["checks"] = checks;
  summary["passed"] = m.ok();
  m.files.push_back(write_file(options.out_dir, "summary.json", summary.dump(2) + "\n"));

  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ordered_json run;
  run["version"] = m.version;
  run["command"] = to_string(command);
  run["refined"] = options.refine;
  run["threads"] = options.threads;
  run["config"] = config_text;
  run["tolerances"] = {{"stationary_unitarity", tol::stationary_unitarity},
                       {"transport_identity", tol::transport_identity},
                       {"endpoint_transmission", tol::endpoint_transmission},
                       {"endpoint_delta_u", tol::endpoint_delta_u},
                       {"field_silence", tol::field_silence},
                       {"min_fidelity", tol::min_fidelity},
                       {"residual_order", tol::residual_order}};
  ordered_json files = ordered_json::array();
  for (const WrittenFile& f : m.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  run["files"] = files;
  run["checks"] = checks;
  run["passed"] = m.ok();
  run["wall_seconds"] = m.wall_seconds;
  write_file(options.out_dir, "run.json", run.dump(2) + "\n");
  return m;
}

}  // namespace ffwd::io

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include "ecoepi/config.hpp"
#include "ecoepi/dispersion.hpp"
#include "ecoepi/equilibrium.hpp"
#include "ecoepi/errors.hpp"
#include "ecoepi/io.hpp"
#include "ecoepi/kinetics.hpp"
#include "ecoepi/ode.hpp"
#include "ecoepi/pattern.hpp"
#include "ecoepi/pde.hpp"
#include "ecoepi/presets.hpp"
#include "ecoepi/stability.hpp"

namespace fs = std::filesystem;
using namespace ecoepi;

namespace {

struct CliOptions {
  std::string config;
  std::string out_override;
  bool serial = false;
  bool coarse = false;
  int workers = 0;

  int worker_request() const { return serial ? 1 : workers; }
};

RunConfig resolve_config(const CliOptions& opt) {
  if (opt.config.empty())
    throw validation_error("--config is required (a file path or a preset name)");
  RunConfig cfg;
  if (fs::exists(opt.config))
    cfg = load_config(opt.config);
  else if (is_preset(opt.config))
    cfg = preset(opt.config);
  else
    throw validation_error("config '" + opt.config + "' is neither a file nor a preset");
  validate(cfg.params);
  if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
  if (opt.coarse) cfg.h = 0.02;
  return cfg;
}

Equilibrium require_equilibrium(const ModelParams& p) {
  for (const Equilibrium& eq : find_equilibria(p))
    if (eq.feasible) return eq;
  throw validation_error("no feasible interior steady state for these parameters");
}

class RunContext {
 public:
  RunContext(const RunConfig& cfg, const CliOptions& opt)
      : cfg_(cfg), opt_(opt), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(cfg.out_dir);
  }
  fs::path path(const std::string& suffix) const {
    return fs::path(cfg_.out_dir) / (cfg_.run_name + "_" + suffix);
  }
  void add(const fs::path& p) { artifacts_.push_back(p); }
  void add(const std::vector<fs::path>& ps) {
    artifacts_.insert(artifacts_.end(), ps.begin(), ps.end());
  }
  void finish() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    emit_manifest(cfg_.out_dir, cfg_.run_name, write_config(cfg_), artifacts_, wall);
  }

 private:
  RunConfig cfg_;
  CliOptions opt_;
  std::vector<fs::path> artifacts_;
  std::chrono::steady_clock::time_point start_;
};

double require_analysis(const RunConfig& cfg, const std::string& key, const char* who) {
  auto it = cfg.analysis.find(key);
  if (it == cfg.analysis.end())
    throw validation_error(std::string(who) + ": analysis key '" + key + "' is required");
  return analysis_double(cfg, key, 0.0);
}

Eigen::Vector3d initial_state(const RunConfig& cfg, const char* who) {
  return {require_analysis(cfg, "init_u", who), require_analysis(cfg, "init_v", who),
          require_analysis(cfg, "init_w", who)};
}

void kv_add_optional(KV& kv, const std::string& key, const std::optional<double>& v) {
  kv_add(kv, key, v ? fmt_full(*v) : std::string("undefined"));
}

int cmd_equilibria(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const auto eqs = find_equilibria(cfg.params);
  const fs::path out = ctx.path("equilibria.csv");
  {
    std::string text = "u,v,w,residual,feasible\n";
    for (const auto& eq : eqs)
      text += fmt_full(eq.u_star) + "," + fmt_full(eq.v_star) + "," + fmt_full(eq.w_star) +
              "," + fmt_sig(eq.residual_norm, 3) + "," + (eq.feasible ? "1" : "0") + "\n";
    write_text(out, text);
  }
  ctx.add(out);
  ctx.finish();
  std::cout << "interior steady states: " << eqs.size() << "\n";
  for (const auto& eq : eqs)
    std::cout << "  (" << fmt_sig(eq.u_star, 6) << ", " << fmt_sig(eq.v_star, 6) << ", "
              << fmt_sig(eq.w_star, 6) << ")" << (eq.feasible ? " feasible" : " infeasible")
              << "\n";
  return 0;
}

int cmd_stability(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const Equilibrium eq = require_equilibrium(cfg.params);
  const TemporalStabilityReport rep = temporal_stability(eq, cfg.params);
  const LocalStabilityReport loc = check_local_stability_conditions(eq, cfg.params);
  double w_prime = analysis_double(cfg, "w_prime", -1.0);
  std::string w_prime_source = "analysis override";
  if (w_prime < 0.0) {
    const AprioriBounds bounds = a_priori_bounds(cfg.params);
    if (!bounds.valid || !(bounds.w_max > 0.0))
      throw validation_error("stability: no usable w upper bound (" + bounds.diagnostic +
                             "); set analysis key w_prime");
    w_prime = bounds.w_max;
    w_prime_source = "a priori bound";
  }
  const GlobalStabilityReport glob = check_global_stability_conditions(eq, cfg.params, w_prime);

  KV kv;
  kv_add(kv, "u_star", eq.u_star);
  kv_add(kv, "v_star", eq.v_star);
  kv_add(kv, "w_star", eq.w_star);
  kv_add(kv, "A1", rep.A1);
  kv_add(kv, "A2", rep.A2);
  kv_add(kv, "A3", rep.A3);
  kv_add(kv, "hurwitz_product", rep.hurwitz_product);
  kv_add(kv, "stable", rep.stable ? "1" : "0");
  kv_add(kv, "local_cond1", loc.cond1 ? "1" : "0");
  kv_add(kv, "local_cond2", loc.cond2 ? "1" : "0");
  kv_add(kv, "local_cond3", loc.cond3 ? "1" : "0");
  kv_add(kv, "local_cond4", loc.cond4 ? "1" : "0");
  kv_add(kv, "local_all_hold", loc.all_hold ? "1" : "0");
  kv_add(kv, "u_lower_bound", loc.u_lower_bound);
  kv_add(kv, "w_prime", w_prime);
  kv_add(kv, "w_prime_source", w_prime_source);
  kv_add(kv, "global_ineq1", glob.ineq1 ? "1" : "0");
  kv_add(kv, "global_ineq2", glob.ineq2 ? "1" : "0");
  kv_add(kv, "global_all_hold", glob.all_hold ? "1" : "0");
  const fs::path out = ctx.path("stability.txt");
  write_key_value(out, kv);
  ctx.add(out);
  ctx.finish();
  std::cout << "equilibrium (" << fmt_sig(eq.u_star, 6) << ", " << fmt_sig(eq.v_star, 6)
            << ", " << fmt_sig(eq.w_star, 6) << "): "
            << (rep.stable ? "temporally stable" : "temporally unstable")
            << " (A1A2-A3 = " << fmt_sig(rep.hurwitz_product, 6) << ")\n";
  return 0;
}

int cmd_bounds(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const AprioriBounds b = a_priori_bounds(cfg.params);
  KV kv;
  kv_add(kv, "u_max", b.u_max);
  kv_add(kv, "v_max", b.v_max);
  kv_add(kv, "w_max", b.w_max);
  kv_add(kv, "quad_A", b.A);
  kv_add(kv, "quad_B", b.B);
  kv_add(kv, "quad_C", b.C);
  kv_add(kv, "valid", b.valid ? "1" : "0");
  if (!b.diagnostic.empty()) kv_add(kv, "diagnostic", b.diagnostic);
  const double w_override = analysis_double(cfg, "w_prime", -1.0);
  try {
    const NonexistenceReport nx = nonexistence_thresholds(cfg.params, cfg.L, w_override);
    kv_add(kv, "mu1", nx.mu1);
    kv_add(kv, "d1_star", nx.d1_star);
    kv_add(kv, "d2_star", nx.d2_star);
    kv_add(kv, "d1_threshold_met", nx.d1_threshold_met ? "1" : "0");
    kv_add(kv, "d2_threshold_met", nx.d2_threshold_met ? "1" : "0");
    kv_add(kv, "d3_note", nx.d3_note);
  } catch (const validation_error& err) {
    kv_add(kv, "thresholds_note", std::string(err.what()));
  }
  const fs::path out = ctx.path("bounds.txt");
  write_key_value(out, kv);
  ctx.add(out);
  ctx.finish();
  std::cout << (b.valid ? "bounds valid" : "bounds not applicable") << ": u_max = "
            << fmt_sig(b.u_max, 6) << ", v_max = " << fmt_sig(b.v_max, 6)
            << ", w_max = " << fmt_sig(b.w_max, 6) << "\n";
  return 0;
}

int cmd_dispersion(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const Equilibrium eq = require_equilibrium(cfg.params);
  const double k_max = analysis_double(cfg, "k_max", 30.0);
  const int k_count = analysis_int(cfg, "k_count", 601);
  if (!(k_max > 0.0) || k_count < 2)
    throw validation_error("dispersion: k_max must be positive and k_count >= 2");
  std::vector<DispersionSample> samples;
  samples.reserve(k_count);
  for (double k : linspace(0.0, k_max, k_count)) samples.push_back(dispersion(eq, cfg.params, k));
  const fs::path out = ctx.path("dispersion.csv");
  write_dispersion_csv(out, samples);
  ctx.add(out);
  ctx.finish();
  double min_rho3 = samples.front().rho3, min_phi = samples.front().phi;
  for (const auto& s : samples) {
    min_rho3 = std::min(min_rho3, s.rho3);
    min_phi = std::min(min_phi, s.phi);
  }
  std::cout << "sampled " << samples.size() << " modes in [0, " << fmt_sig(k_max, 6)
            << "]: min rho3 = " << fmt_sig(min_rho3, 6)
            << ", min phi = " << fmt_sig(min_phi, 6) << "\n";
  return 0;
}

int cmd_turing_check(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const Equilibrium eq = require_equilibrium(cfg.params);
  const TuringDiagnostic diag = turing_check(eq, cfg.params);
  KV kv;
  kv_add(kv, "q1", diag.q1);
  kv_add(kv, "q2", diag.q2);
  kv_add(kv, "q3", diag.q3);
  kv_add(kv, "q4", diag.q4);
  kv_add(kv, "r1", diag.r1);
  kv_add(kv, "r2", diag.r2);
  kv_add(kv, "r3", diag.r3);
  kv_add(kv, "r4", diag.r4);
  kv_add_optional(kv, "kd_sq", diag.kd_sq);
  kv_add_optional(kv, "kf_sq", diag.kf_sq);
  kv_add_optional(kv, "rho3_min", diag.rho3_min);
  kv_add_optional(kv, "phi_min", diag.phi_min);
  kv_add(kv, "verdict", to_string(diag.verdict));
  const fs::path out = ctx.path("turing.txt");
  write_key_value(out, kv);
  ctx.add(out);
  ctx.finish();
  std::cout << "verdict: " << to_string(diag.verdict) << "\n";
  return 0;
}

AxisSpec axis_from_config(const RunConfig& cfg, const std::string& prefix,
                          const std::string& fallback_name) {
  AxisSpec axis;
  axis.name = analysis_str(cfg, prefix + "_name", fallback_name);
  param_field(axis.name);  // throws on unknown parameter
  const double lo = require_analysis(cfg, prefix + "_min", "region-scan");
  const double hi = require_analysis(cfg, prefix + "_max", "region-scan");
  const int n = analysis_int(cfg, prefix + "_count", 50);
  const bool log = analysis_int(cfg, prefix + "_log", 0) != 0;
  if (!(lo < hi) || n < 2)
    throw validation_error("region-scan: " + prefix + " range needs min < max and count >= 2");
  axis.values = log ? logspace(lo, hi, n) : linspace(lo, hi, n);
  return axis;
}

int cmd_region_scan(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const AxisSpec a1 = axis_from_config(cfg, "axis1", "sigma");
  const AxisSpec a2 = axis_from_config(cfg, "axis2", "d1");
  const RegionMap map = region_scan(cfg.params, a1, a2, opt.worker_request());
  const fs::path out = ctx.path("region.csv");
  const fs::path hopf = ctx.path("hopf.csv");
  write_region_csv(out, map);
  write_hopf_csv(hopf, map);
  ctx.add(out);
  ctx.add(hopf);
  ctx.finish();
  int counts[5] = {0, 0, 0, 0, 0};
  for (Verdict v : map.cells) ++counts[static_cast<int>(v)];
  std::cout << "cells: planar_stable " << counts[0] << ", turing " << counts[1]
            << ", hopf_unstable " << counts[2] << ", infeasible " << counts[4]
            << "; hopf crossings " << map.hopf.size() << "\n";
  return 0;
}

int cmd_integrate(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const Eigen::Vector3d init = initial_state(cfg, "integrate");
  const double t_end = analysis_double(cfg, "t_end", 1000.0);
  const double dt = analysis_double(cfg, "dt", 0.01);
  const int decimate = analysis_int(cfg, "decimate", 10);
  const Trajectory traj = integrate_rk4(cfg.params, init, dt, t_end, decimate);
  const fs::path out = ctx.path("trajectory.csv");
  write_trajectory_csv(out, traj);
  ctx.add(out);
  ctx.finish();
  const Eigen::Vector3d& last = traj.states.back();
  std::cout << "integrated to t = " << fmt_sig(traj.times.back(), 6) << ": ("
            << fmt_sig(last[0], 6) << ", " << fmt_sig(last[1], 6) << ", "
            << fmt_sig(last[2], 6) << ")\n";
  return 0;
}

int cmd_lyapunov(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const Eigen::Vector3d init = initial_state(cfg, "lyapunov");
  LyapunovSettings settings;
  settings.transient = analysis_double(cfg, "transient", settings.transient);
  settings.total = analysis_double(cfg, "total", settings.total);
  settings.renorm_interval = analysis_double(cfg, "renorm_interval", settings.renorm_interval);
  settings.dt = analysis_double(cfg, "dt", settings.dt);
  const LyapunovSpectrum spec = lyapunov_spectrum(cfg.params, init, settings);
  KV kv;
  kv_add(kv, "L1", spec.L1);
  kv_add(kv, "L2", spec.L2);
  kv_add(kv, "L3", spec.L3);
  kv_add(kv, "sum", spec.L1 + spec.L2 + spec.L3);
  kv_add(kv, "mean_trace", spec.mean_trace);
  kv_add(kv, "transient_time", spec.transient_time);
  kv_add(kv, "total_time", spec.total_time);
  kv_add(kv, "renorm_interval", spec.renorm_interval);
  kv_add(kv, "converged", spec.converged ? "1" : "0");
  const fs::path out = ctx.path("lyapunov.txt");
  write_key_value(out, kv);
  ctx.add(out);
  ctx.finish();
  std::cout << "spectrum: (" << fmt_sig(spec.L1, 6) << ", " << fmt_sig(spec.L2, 6) << ", "
            << fmt_sig(spec.L3, 6) << ")" << (spec.converged ? "" : " [not converged]")
            << "\n";
  return 0;
}

int cmd_bifurcate(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const std::string parameter = analysis_str(cfg, "parameter", "");
  if (parameter.empty())
    throw validation_error("bifurcate: analysis key 'parameter' is required");
  const Eigen::Vector3d init = initial_state(cfg, "bifurcate");
  const double lo = require_analysis(cfg, "grid_min", "bifurcate");
  const double hi = require_analysis(cfg, "grid_max", "bifurcate");
  const int n = analysis_int(cfg, "grid_count", 101);
  const bool log = analysis_int(cfg, "log_spacing", 0) != 0;
  if (!(lo < hi) || n < 2)
    throw validation_error("bifurcate: grid needs grid_min < grid_max and grid_count >= 2");
  const double transient = analysis_double(cfg, "transient", 10000.0);
  const double window = analysis_double(cfg, "window", 5000.0);
  const double dt = analysis_double(cfg, "dt", 0.01);
  const BifurcationSweep sweep =
      bifurcation_sweep(cfg.params, parameter, log ? logspace(lo, hi, n) : linspace(lo, hi, n),
                        init, transient, window, dt, opt.worker_request());
  const fs::path out = ctx.path("bifurcation.csv");
  write_sweep_csv(out, sweep);
  ctx.add(out);
  ctx.finish();
  int diverged = 0;
  for (bool d : sweep.diverged) diverged += d ? 1 : 0;
  std::cout << "swept " << sweep.grid.size() << " values of " << parameter << " (" << diverged
            << " diverged)\n";
  return 0;
}

SnapshotSchedule schedule_from_config(const RunConfig& cfg, const GridSpec& grid) {
  if (!cfg.has_schedule)
    throw validation_error("simulate: config needs a [schedule] section");
  if (!cfg.schedule_times.empty()) return make_schedule(cfg.schedule_times, grid);
  return make_schedule_interval(cfg.t_end, cfg.interval, grid);
}

FieldGrid perturbed_initial(const RunConfig& cfg, const Equilibrium& eq, const GridSpec& grid) {
  FieldGrid init = initial_condition(eq, grid);
  const std::string mask = analysis_str(cfg, "perturb_fields", "uvw");
  if (mask.find_first_not_of("uvw") != std::string::npos || mask.empty())
    throw validation_error("simulate: perturb_fields must be a non-empty subset of 'uvw'");
  if (mask.find('u') == std::string::npos) init.u.setConstant(eq.u_star);
  if (mask.find('v') == std::string::npos) init.v.setConstant(eq.v_star);
  if (mask.find('w') == std::string::npos) init.w.setConstant(eq.w_star);
  return init;
}

int cmd_simulate(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const GridSpec grid = make_grid(cfg.params, cfg.L, cfg.h, cfg.dt);
  const SnapshotSchedule schedule = schedule_from_config(cfg, grid);
  const Equilibrium eq = require_equilibrium(cfg.params);
  const std::vector<FieldGrid> history =
      simulate_from(perturbed_initial(cfg, eq, grid), cfg.params, grid, schedule,
                    opt.worker_request());
  std::vector<FieldDistances> dist;
  for (size_t i = 0; i + 1 < history.size(); ++i)
    dist.push_back(snapshot_distance(history[i], history[i + 1]));
  for (const FieldGrid& f : history) ctx.add(write_snapshot(cfg.out_dir, cfg.run_name, f, grid));
  if (!dist.empty()) {
    const fs::path dpath = ctx.path("distances.csv");
    write_distances_csv(dpath, dist);
    ctx.add(dpath);
  }
  ctx.finish();
  std::cout << "captured " << history.size() << " snapshots on a " << grid.nx << "x" << grid.nx
            << " grid";
  if (!dist.empty()) std::cout << "; final-pair max distance " << fmt_sig(dist.back().max(), 4);
  std::cout << "\n";
  return 0;
}

PatternReport classify_run(const RunConfig& cfg, const std::vector<FieldGrid>& history) {
  const Equilibrium eq = require_equilibrium(cfg.params);
  return classify(history, turing_check(eq, cfg.params).verdict);
}

fs::path write_pattern_report(RunContext& ctx, const PatternReport& rep) {
  KV kv;
  kv_add(kv, "label", to_string(rep.label));
  kv_add(kv, "stationary", rep.stationary ? "1" : "0");
  kv_add(kv, "linear_verdict", to_string(rep.linear_verdict));
  kv_add(kv, "final_distance_u", rep.distances.back().u);
  kv_add(kv, "final_distance_v", rep.distances.back().v);
  kv_add(kv, "final_distance_w", rep.distances.back().w);
  kv_add(kv, "final_amplitude_u", rep.amplitudes.back()[0]);
  kv_add(kv, "final_amplitude_v", rep.amplitudes.back()[1]);
  kv_add(kv, "final_amplitude_w", rep.amplitudes.back()[2]);
  const fs::path out = ctx.path("pattern.txt");
  write_key_value(out, kv);
  ctx.add(out);
  return out;
}

int cmd_classify(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const std::vector<FieldGrid> history = load_run_snapshots(cfg.out_dir, cfg.run_name);
  const PatternReport rep = classify_run(cfg, history);
  const fs::path dpath = ctx.path("distances.csv");
  write_distances_csv(dpath, rep.distances);
  ctx.add(dpath);
  write_pattern_report(ctx, rep);
  ctx.finish();
  std::cout << "label: " << to_string(rep.label) << "\n";
  return 0;
}

int simulate_and_classify(const RunConfig& cfg, const CliOptions& opt) {
  RunContext ctx(cfg, opt);
  const GridSpec grid = make_grid(cfg.params, cfg.L, cfg.h, cfg.dt);
  const SnapshotSchedule schedule = schedule_from_config(cfg, grid);
  const Equilibrium eq = require_equilibrium(cfg.params);
  const Verdict verdict = turing_check(eq, cfg.params).verdict;
  const std::vector<FieldGrid> history = simulate_from(
      perturbed_initial(cfg, eq, grid), cfg.params, grid, schedule, opt.worker_request());
  for (const FieldGrid& f : history) ctx.add(write_snapshot(cfg.out_dir, cfg.run_name, f, grid));
  const PatternReport rep = classify(history, verdict);
  const fs::path dpath = ctx.path("distances.csv");
  write_distances_csv(dpath, rep.distances);
  ctx.add(dpath);
  write_pattern_report(ctx, rep);
  ctx.finish();
  std::cout << "label: " << to_string(rep.label) << "\n";
  return 0;
}

int cmd_reproduce(const std::string& target, const CliOptions& opt) {
  if (target == "table2") {
    RunConfig cfg = preset("sigma026");
    cfg.run_name = "table2";
    if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
    RunContext ctx(cfg, opt);
    std::string text = "d1,k,rho1,rho2,rho3,phi\n";
    for (double d1 : {1e-5, 1e-6}) {
      ModelParams p = cfg.params;
      p.d1 = d1;
      const Equilibrium eq = require_equilibrium(p);
      for (double k : {0.0, 15.0}) {
        const DispersionSample s = dispersion(eq, p, k);
        text += fmt_sig(d1, 6) + "," + fmt_sig(k, 6) + "," + fmt_sig(s.rho1, 6) + "," +
                fmt_sig(s.rho2, 6) + "," + fmt_sig(s.rho3, 6) + "," + fmt_sig(s.phi, 6) + "\n";
      }
    }
    const fs::path out = fs::path(cfg.out_dir) / "table2.csv";
    write_text(out, text);
    ctx.add(out);
    ctx.finish();
    std::cout << "wrote " << out.string() << "\n";
    return 0;
  }
  if (target == "fig8" || target == "fig9" || target == "fig12") {
    const std::string name =
        target == "fig8" ? "table3_a" : (target == "fig9" ? "table3_c" : "table3_e");
    RunConfig cfg = preset(name);
    if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
    if (opt.coarse) cfg.h = 0.02;
    return simulate_and_classify(cfg, opt);
  }
  if (target == "spectra") {
    int rc = 0;
    for (const char* name : {"lyapunov_chaotic", "lyapunov_stable"}) {
      RunConfig cfg = preset(name);
      if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
      rc |= cmd_lyapunov(cfg, opt);
    }
    return rc;
  }
  throw validation_error("reproduce: unknown target '" + target +
                         "' (expected table2|fig8|fig9|fig12|spectra)");
}

int cmd_presets(const std::string& emit_dir) {
  if (emit_dir.empty()) {
    for (const std::string& name : preset_names()) std::cout << name << "\n";
    return 0;
  }
  for (const std::string& name : preset_names())
    write_text(fs::path(emit_dir) / (name + ".ini"), write_config(preset(name)));
  std::cout << "wrote " << preset_names().size() << " preset configs to " << emit_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusive eco-epidemiological model toolkit: steady states, stability and "
               "dispersion analysis, Lyapunov spectra, bifurcation sweeps, and 2-D "
               "reaction-diffusion pattern simulations"};
  app.require_subcommand(1);
  CliOptions opt;
  app.add_option("--config", opt.config, "Run configuration: an INI file path or a preset name");
  app.add_option("--out", opt.out_override, "Override the configured output directory");
  app.add_flag("--serial", opt.serial, "Force single-worker execution");
  app.add_flag("--coarse", opt.coarse, "Coarse spatial resolution (h = 0.02) for quick runs");
  app.add_option("--workers", opt.workers, "Worker threads (default: ECOEPI_THREADS or hardware)");

  const struct {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, const CliOptions&);
  } table[] = {
      {"equilibria", "Find interior steady states", cmd_equilibria},
      {"stability", "Temporal stability report with local/global conditions", cmd_stability},
      {"bounds", "A priori bounds and pattern-nonexistence thresholds", cmd_bounds},
      {"dispersion", "Sample the dispersion relation over wave numbers", cmd_dispersion},
      {"turing-check", "Diffusion-driven instability verdict", cmd_turing_check},
      {"region-scan", "Two-parameter verdict map with Hopf boundary", cmd_region_scan},
      {"integrate", "Fixed-step RK4 trajectory of the temporal system", cmd_integrate},
      {"lyapunov", "Lyapunov spectrum via tangent-space integration", cmd_lyapunov},
      {"bifurcate", "Extrema sweep over a bifurcation parameter", cmd_bifurcate},
      {"simulate", "2-D reaction-diffusion run with timed snapshots", cmd_simulate},
      {"classify", "Label a finished run's snapshots", cmd_classify},
  };
  int (*selected)(const RunConfig&, const CliOptions&) = nullptr;
  for (const auto& row : table) {
    CLI::App* sub = app.add_subcommand(row.name, row.help);
    sub->fallthrough();
    sub->callback([&selected, fn = row.fn] { selected = fn; });
  }

  std::string reproduce_target;
  CLI::App* rep = app.add_subcommand("reproduce", "Chain the steps for a published result");
  rep->fallthrough();
  rep->add_option("target", reproduce_target, "table2|fig8|fig9|fig12|spectra")->required();

  std::string emit_dir;
  CLI::App* pre = app.add_subcommand("presets", "List bundled presets (--emit writes them)");
  pre->fallthrough();
  pre->add_option("--emit", emit_dir, "Directory to write one INI file per preset");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) return cmd_reproduce(reproduce_target, opt);
    if (pre->parsed()) return cmd_presets(emit_dir);
    return selected(resolve_config(opt), opt);
  } catch (const validation_error& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return 2;
  } catch (const numerical_error& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 3;
  }
}

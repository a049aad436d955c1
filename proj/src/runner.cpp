#include "frontwave/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "frontwave/io.hpp"
#include "frontwave/verify.hpp"

namespace frontwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json config_echo(const ExperimentConfig& cfg, RunMode mode) {
  json j;
  j["mode"] = mode_name(mode);
  j["a"] = cfg.sim.params.a;
  j["b"] = cfg.sim.params.b;
  j["s"] = cfg.sim.params.s;
  j["g"] = cfg.sim.params.g;
  j["d"] = cfg.sim.params.d;
  j["N"] = cfg.sim.params.dim_N;
  j["seed"] = cfg.seed;
  switch (mode) {
    case RunMode::Simulate:
    case RunMode::Sweep:
    case RunMode::Fit:
      j["t_end"] = cfg.sim.t_end;
      j["dr"] = cfg.sim.grid.dr;
      j["n_points"] = cfg.sim.grid.n_points;
      j["r_max"] = cfg.sim.grid.r_max();
      j["snapshot_dt"] = cfg.sim.snapshot_dt;
      j["cfl"] = cfg.sim.cfl_factor;
      j["amplitude"] = cfg.sim.init.amplitude;
      j["support_radius"] = cfg.sim.init.support_radius;
      j["levels"] = cfg.sim.levels;
      j["c_audit_factor"] = cfg.c_audit_factor;
      break;
    case RunMode::Ode:
      j["ode_C0"] = cfg.ode_x0.C;
      j["ode_H0"] = cfg.ode_x0.H;
      j["ode_T"] = cfg.ode_T;
      break;
    case RunMode::Dirichlet:
      j["t0"] = cfg.dirichlet_t0;
      j["dxi"] = cfg.dirichlet_dxi;
      j["drho"] = cfg.dirichlet_drho;
      j["tau_end"] = cfg.dirichlet_tau_end;
      break;
    case RunMode::Verify:
      break;
  }
  return j;
}

struct Emitter {
  fs::path dir;
  std::vector<FileRecord> files;

  void emit(const std::string& name, const std::string& body) {
    const fs::path p = dir / name;
    fs::create_directories(p.parent_path());
    write_text_file(p, body);
    files.push_back({name, body.size(), fnv1a_digest(body)});
  }
};

void write_manifest(Emitter& em, const ExperimentConfig& cfg, RunMode mode,
                    double wall_seconds, const json& audit_summary) {
  json j;
  j["config"] = config_echo(cfg, mode);
  j["versions"] = {{"frontwave", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  j["wall_time_seconds"] = wall_seconds;
  j["audit_summary"] = audit_summary;
  std::sort(em.files.begin(), em.files.end(),
            [](const FileRecord& a, const FileRecord& b) { return a.name < b.name; });
  j["files"] = json::array();
  for (const auto& f : em.files)
    j["files"].push_back({{"name", f.name}, {"bytes", f.bytes}, {"digest", f.digest}});
  const std::string body = j.dump(2) + "\n";
  write_text_file(em.dir / "manifest.json", body);
}

json audit_summary_of(const SimulationResult& sim, const EnvelopeReport& env) {
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& a : sim.audits) {
    if (a.margin < 0.0) ++violations;
    worst = std::min(worst, a.margin);
  }
  json j;
  j["invariant_records"] = sim.audits.size();
  j["invariant_violations"] = violations;
  j["worst_margin"] = worst;
  j["envelope_checks"] = env.checks;
  j["envelope_violations"] = env.violations.size();
  return j;
}

// Runs one simulation pipeline into `dir`; returns 0/1 and file records.
int simulate_pipeline(const ExperimentConfig& cfg, Emitter& em, bool with_fits,
                      json& audit_summary) {
  SimulationResult sim = simulate(cfg.sim);
  em.emit("profiles.csv", render_profiles_csv(sim));
  em.emit("fronts.csv", render_fronts_csv(sim.fronts));
  em.emit("audit.ndjson", render_audit_ndjson(sim.audits));

  const double c_star = spreading_speeds(cfg.sim.params).c_star;
  const auto constants =
      choose_constants(sim.snapshots.front(), cfg.sim.grid, cfg.sim.params,
                       cfg.c_audit_factor * c_star);
  const EnvelopeReport env = audit_envelopes(sim, constants);
  em.emit("envelope-report.json", render_envelope_report(env));

  if (with_fits) {
    double t1 = cfg.fit_t1, t2 = cfg.fit_t2;
    if (cfg.fit_window_auto) {
      t2 = cfg.sim.t_end;
      t1 = t2 / 2.0;
    }
    json j;
    const auto sp = speed_estimate(sim.fronts, cfg.fit_field, cfg.fit_level, t1, t2);
    j["speed_estimates"] = json::array(
        {{{"field", field_name(cfg.fit_field)},
          {"level", cfg.fit_level},
          {"c_hat", sp.c_hat},
          {"std_error", sp.std_error},
          {"n", sp.n_samples},
          {"window", {t1, t2}}}});
    const auto df = drift_fit(sim.fronts, cfg.fit_field, cfg.fit_level, c_star,
                              std::make_pair(t1, t2));
    j["fits"] = json::array({{{"field", field_name(cfg.fit_field)},
                              {"level", cfg.fit_level},
                              {"c_hat", df.c_hat},
                              {"k_hat", df.k_hat},
                              {"b_hat", df.b_hat},
                              {"residual_rms", df.residual_rms},
                              {"n", df.n_samples},
                              {"window", {std::max(t1, 10.0), t2}}}});
    em.emit("fits.json", j.dump(2) + "\n");
  }

  emit_plots(em.dir);
  // plot.gp was written directly; fold it into the inventory.
  {
    std::ifstream in(em.dir / "plot.gp", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    em.files.push_back({"plot.gp", ss.str().size(), fnv1a_digest(ss.str())});
  }

  audit_summary = audit_summary_of(sim, env);
  return (sim.audits_ok && env.clean()) ? 0 : 1;
}

int ode_pipeline(const ExperimentConfig& cfg, Emitter& em, json& audit_summary) {
  const double bound = ode_max_dt(cfg.sim.params);
  const double dt = cfg.ode_dt > 0.0 ? std::min(cfg.ode_dt, bound) : bound;
  const OdeTrajectory traj =
      integrate_ode(cfg.ode_x0, cfg.sim.params, dt, cfg.ode_T);
  em.emit("ode.csv", render_ode_csv(traj, cfg.sim.params));
  audit_summary = {{"steps", traj.times.size() - 1}};
  return 0;
}

int dirichlet_pipeline(const ExperimentConfig& cfg, Emitter& em,
                       json& audit_summary) {
  const auto speeds = spreading_speeds(cfg.sim.params);
  DirichletParams p;
  p.lambda_star = speeds.lambda_star;
  p.dim_N = cfg.sim.params.dim_N;
  p.t0 = cfg.dirichlet_t0;
  p.delta = cfg.dirichlet_delta_auto
                ? (cfg.sim.params.dim_N + 2.0) / (2.0 * speeds.lambda_star)
                : cfg.dirichlet_delta;
  p.validate();

  const SpectralProfile zeta0 = default_zeta0(cfg.dirichlet_drho);
  const double moment = profile_moment(zeta0);
  const double t_end = p.t0 * (std::exp(cfg.dirichlet_tau_end) - 1.0);
  std::vector<double> samples;
  for (int k = 1; k <= 4; ++k)
    samples.push_back(p.t0 * (std::exp(cfg.dirichlet_tau_end * k / 4.0) - 1.0));
  const auto sol =
      solve_linear_drift(p, zeta0, t_end, cfg.dirichlet_dxi, samples);

  std::vector<DirichletRow> rows;
  double min_positivity = 0.0;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times[k];
    const ArrayXd z = sol.z_at(k);
    min_positivity = std::min(min_positivity, z.minCoeff());
    const double xi_hi = 4.0 * std::sqrt(t + p.t0);
    const Index stride = std::max<Index>(1, sol.n_xi() / 800);
    for (Index i = 0; i < sol.n_xi(); i += stride) {
      const double xi = sol.xi(i);
      if (xi > xi_hi) break;
      const double za = asymptotic_leading(t, xi, p, moment);
      const double denom = std::max(std::abs(za), 1e-300);
      rows.push_back({t, xi, z[i], za, std::abs(z[i] - za) / denom});
    }
  }
  em.emit("dirichlet.csv", render_dirichlet_csv(rows));

  // Spectral diagnostics live beside the comparison data.
  json rep;
  {
    const double drho = cfg.dirichlet_drho;
    json eig = json::array();
    for (int k = 1; k <= 3; ++k) {
      const SpectralProfile pk = phi_k(k, drho);
      SpectralProfile lpk = operator_L(pk);
      lpk.values -= (-(k - 1.0)) * pk.values;
      eig.push_back({{"k", k}, {"relative_residual", weighted_norm(lpk)}});
    }
    rep["eigen_residuals"] = eig;
    rep["phi1_norm_sq"] = weighted_inner(phi_k(1, drho), phi_k(1, drho));
    rep["self_adjointness_defect"] =
        self_adjointness_defect(cfg.seed, std::min(drho, 0.005), 20);

    // Decay of the component orthogonal to phi_1 in self-similar variables.
    const SpectralProfile zq = project_Q(zeta0);
    std::vector<double> taus = {1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> ts;
    for (double tau : taus) ts.push_back(p.t0 * (std::exp(tau) - 1.0));
    const auto qsol = solve_linear_drift(p, zq, ts.back(), cfg.dirichlet_dxi, ts);
    double sxx = 0, sxy = 0, sx = 0, sy = 0;
    const int n = static_cast<int>(taus.size());
    json qn = json::array();
    for (int i = 0; i < n; ++i) {
      const auto zeta = qsol.self_similar_at(i, cfg.dirichlet_drho);
      const double q2 = std::max(weighted_inner(project_Q(zeta), project_Q(zeta)),
                                 1e-300);
      qn.push_back({{"tau", taus[i]}, {"Q_norm_sq", q2}});
      sx += taus[i];
      sy += std::log(q2);
      sxx += taus[i] * taus[i];
      sxy += taus[i] * std::log(q2);
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep["q_decay"] = {{"samples", qn}, {"fitted_exponent", slope}};
  }
  em.emit("spectral-report.json", rep.dump(2) + "\n");
  audit_summary = {{"z_min", min_positivity}};
  return min_positivity >= -1e-10 ? 0 : 1;
}

int verify_pipeline(const ExperimentConfig& cfg, Emitter& em,
                    json& audit_summary) {
  const VerifyReport report = run_verification(cfg.seed);
  em.emit("verify-report.json", render_verify_report(report));
  int failed = 0;
  for (const auto& c : report.criteria)
    if (!c.pass) ++failed;
  audit_summary = {{"criteria", report.criteria.size()}, {"failed", failed}};
  return report.all_pass ? 0 : 1;
}

std::string sweep_dir_name(const std::vector<SweepAxis>& axes,
                           const std::vector<std::size_t>& idx) {
  std::string name;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (a) name += "_";
    name += axes[a].key + "=" + axes[a].tokens[idx[a]];
  }
  return name;
}

int sweep_pipeline(const ExperimentConfig& cfg, Emitter& em, int workers,
                   json& audit_summary) {
  std::vector<std::vector<std::size_t>> entries;
  std::vector<std::size_t> idx(cfg.sweep_axes.size(), 0);
  if (cfg.sweep_axes.empty())
    throw ConfigError("sweep mode requires a [sweep] section");
  while (true) {
    entries.push_back(idx);
    std::size_t a = 0;
    for (; a < idx.size(); ++a) {
      if (++idx[a] < cfg.sweep_axes[a].tokens.size()) break;
      idx[a] = 0;
    }
    if (a == idx.size()) break;
  }

  std::vector<int> codes(entries.size(), 0);
  std::vector<std::vector<FileRecord>> records(entries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= entries.size()) return;
      try {
        ExperimentConfig entry_cfg = cfg;
        for (std::size_t a = 0; a < cfg.sweep_axes.size(); ++a)
          apply_sweep_value(entry_cfg, cfg.sweep_axes[a].key,
                            cfg.sweep_axes[a].values[entries[k][a]]);
        resolve_grid(entry_cfg);
        const std::string name = sweep_dir_name(cfg.sweep_axes, entries[k]);
        Emitter sub{em.dir / name, {}};
        fs::create_directories(sub.dir);
        json sub_summary;
        const auto t0 = std::chrono::steady_clock::now();
        codes[k] = simulate_pipeline(entry_cfg, sub, false, sub_summary);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        write_manifest(sub, entry_cfg, RunMode::Simulate, secs, sub_summary);
        sub.files.push_back(
            {"manifest.json",
             fs::file_size(sub.dir / "manifest.json"),
             file_digest(sub.dir / "manifest.json")});
        records[k] = std::move(sub.files);
        for (auto& f : records[k]) f.name = name + "/" + f.name;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  const int n_workers = std::max(1, std::min<int>(workers, entries.size()));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  int code = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    code = std::max(code, codes[k]);
    for (auto& f : records[k]) em.files.push_back(std::move(f));
  }
  audit_summary = {{"entries", entries.size()}};
  return code;
}

}  // namespace

int resolve_workers(const RunOptions& options) {
  int workers = options.config.workers;
  if (options.cli_workers) workers = *options.cli_workers;
  if (const char* env = std::getenv("FRONTWAVE_WORKERS")) {
    try {
      workers = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError("FRONTWAVE_WORKERS must be an integer");
    }
  }
  if (workers < 1) throw ConfigError("worker count must be >= 1");
  return workers;
}

RunResult run(const RunOptions& options) {
  const ExperimentConfig& cfg = options.config;
  RunMode mode;
  if (options.cli_mode && cfg.mode && *options.cli_mode != *cfg.mode)
    throw ConfigError(std::string("config mode '") + mode_name(*cfg.mode) +
                      "' disagrees with subcommand '" +
                      mode_name(*options.cli_mode) + "'");
  if (options.cli_mode)
    mode = *options.cli_mode;
  else if (cfg.mode)
    mode = *cfg.mode;
  else
    throw ConfigError("no mode given (subcommand or 'mode =' key)");

  RunResult result;
  result.out_dir = options.out_dir;
  fs::create_directories(options.out_dir);

  Emitter em{options.out_dir, {}};
  json audit_summary;
  const auto t0 = std::chrono::steady_clock::now();
  switch (mode) {
    case RunMode::Simulate:
      result.exit_code = simulate_pipeline(cfg, em, false, audit_summary);
      break;
    case RunMode::Fit:
      result.exit_code = simulate_pipeline(cfg, em, true, audit_summary);
      break;
    case RunMode::Ode:
      result.exit_code = ode_pipeline(cfg, em, audit_summary);
      break;
    case RunMode::Dirichlet:
      result.exit_code = dirichlet_pipeline(cfg, em, audit_summary);
      break;
    case RunMode::Verify:
      result.exit_code = verify_pipeline(cfg, em, audit_summary);
      break;
    case RunMode::Sweep:
      result.exit_code =
          sweep_pipeline(cfg, em, resolve_workers(options), audit_summary);
      break;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(em, cfg, mode, secs, audit_summary);
  result.files = em.files;
  return result;
}

void emit_plots(const std::filesystem::path& run_dir) {
  const fs::path csv = run_dir / "profiles.csv";
  std::ifstream in(csv);
  if (!in) throw ConfigError("emit_plots: missing " + csv.string());

  // Gather snapshot times and per-time profiles of F+C for front markers.
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> times;
  std::vector<std::vector<double>> r_cols, fc_cols;
  double prev_t = std::numeric_limits<double>::quiet_NaN();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, r, F, C, H;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &r, &F, &C, &H) != 5)
      throw ConfigError("emit_plots: malformed row in profiles.csv");
    if (times.empty() || t != prev_t) {
      times.push_back(t);
      r_cols.emplace_back();
      fc_cols.emplace_back();
      prev_t = t;
    }
    r_cols.back().push_back(r);
    fc_cols.back().push_back(F + C);
  }
  if (times.empty()) throw ConfigError("emit_plots: profiles.csv has no rows");

  std::vector<std::size_t> picks;
  if (times.size() <= 3) {
    for (std::size_t i = 0; i < times.size(); ++i) picks.push_back(i);
  } else {
    picks = {times.size() / 3, (2 * times.size()) / 3, times.size() - 1};
  }

  std::ostringstream gp;
  gp << "# Transient waveforms: F solid, C heavy, H thin.\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 900," << 300 * picks.size() << "\n"
        "set output 'waveforms.png'\n"
        "set multiplot layout " << picks.size() << ",1\n"
        "set xlabel 'r'\n"
        "set yrange [0:*]\n";
  for (std::size_t p : picks) {
    const double T = times[p];
    gp << "set title 't = " << fmt15(T) << "'\n";
    // Front marker: rightmost 0.5-crossing of F+C, when present.
    const auto& rr = r_cols[p];
    const auto& fc = fc_cols[p];
    double front = -1.0;
    for (std::size_t i = rr.size() - 1; i >= 1; --i) {
      if (fc[i - 1] >= 0.5 && fc[i] < 0.5) {
        front = rr[i - 1] +
                (rr[i] - rr[i - 1]) * (fc[i - 1] - 0.5) / (fc[i - 1] - fc[i]);
        break;
      }
    }
    if (front > 0.0) {
      gp << "set arrow 1 from " << fmt15(front)
         << ", graph 0 to " << fmt15(front) << ", graph 1 nohead dashtype 2\n"
         << "set label 1 'final zone' at " << fmt15(front / 2.0)
         << ", graph 0.92 center\n"
         << "set label 2 'leading edge' at " << fmt15(front * 1.25)
         << ", graph 0.92 center\n";
    } else {
      gp << "unset arrow 1\nunset label 1\nunset label 2\n";
    }
    gp << "plot 'profiles.csv' every ::1 using 2:(abs($1-" << fmt15(T)
       << ")<1e-9 ? $3 : 1/0) with lines lw 1 lc rgb 'blue' title 'F', \\\n"
          "     '' every ::1 using 2:(abs($1-" << fmt15(T)
       << ")<1e-9 ? $4 : 1/0) with lines lw 3 lc rgb 'dark-red' title 'C', \\\n"
          "     '' every ::1 using 2:(abs($1-" << fmt15(T)
       << ")<1e-9 ? $5 : 1/0) with lines lw 0.7 lc rgb 'black' title 'H'\n";
  }
  gp << "unset multiplot\n";
  write_text_file(run_dir / "plot.gp", gp.str());
}

}  // namespace frontwave

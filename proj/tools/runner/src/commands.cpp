#include "chemokin/runner/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "chemokin/characteristics_oracle.hpp"
#include "chemokin/equilibrium.hpp"
#include "chemokin/hypocoercivity.hpp"
#include "chemokin/inequality_lab.hpp"
#include "chemokin/runner/checks.hpp"

namespace chemokin::runner {

using nlohmann::json;

Command parse_command(const std::string& s) {
  if (s == "run") return Command::run;
  if (s == "check") return Command::check;
  if (s == "oracle-compare" || s == "oracle_compare") return Command::oracle_compare;
  if (s == "sweep") return Command::sweep;
  throw ConfigError("unknown command '" + s + "'");
}

namespace {

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

std::string numbered(const std::string& path, std::size_t k) {
  const std::filesystem::path p(path);
  std::filesystem::path q = p.parent_path() / (p.stem().string() + "_" + std::to_string(k) + p.extension().string());
  return q.string();
}

// Fit of ||W_y||^2 over [1, t_end]; nullopt when the window is too short or hits zero.
std::optional<RateFit> wy_fit(const DiagnosticsSeries& s) {
  if (s.empty()) return std::nullopt;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : s) pts.emplace_back(r.t, r.normWy2);
  try {
    return fit_decay_rate(pts, 1.0, s.back().t);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

} // namespace

void write_series(const std::string& path, const DiagnosticsSeries& s) {
  std::ofstream f = open_out(path);
  f << diagnostics_header() << '\n';
  for (const auto& r : s) f << format_record(r) << '\n';
}

void write_snapshots(const std::string& path, const Grid& g, const Trajectory& tr) {
  json snaps = json::array();
  for (const auto& s : tr.snapshots)
    snaps.push_back({{"t", s.t}, {"x", s.x}, {"xdot", s.xdot}, {"u", s.W.u}, {"v", s.W.v}});
  write_json(path, {{"y", g.y}, {"snapshots", snaps}});
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream f = open_out(path);
  f << doc.dump(2) << '\n';
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const Grid g = cfg.grid();
  const InitialData ini = make_initial(cfg.initial, g);
  const RunResult rr = run(g, ini.W, cfg.mode, cfg.step_config());
  write_series(cfg.series_path, rr.series);
  if (!cfg.snapshots.empty()) write_snapshots(cfg.snapshot_path, g, rr.trajectory);

  out << "steps " << rr.steps << ", t = " << rr.final_state.t << ", x = " << rr.final_state.x << '\n';
  if (const auto fit = wy_fit(rr.series))
    out << "fitted rate of ||W_y||^2 on [1, " << rr.series.back().t << "]: " << fit->gamma_hat
        << " (r2 " << fit->r2 << ")\n";
  out << "series written to " << cfg.series_path << '\n';
  if (rr.abort) {
    out << "solver abort (" << to_string(rr.abort->kind) << ") at t = " << rr.abort->t << ": "
        << rr.abort->message << '\n';
    return exit_solver_abort;
  }
  return exit_ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const SuiteScale s = suite_scale(cfg);
  json report = json::array();
  bool ok = true;
  run_suite(s, {}, [&](const CheckResult& r) {
    char line[64];
    std::snprintf(line, sizeof line, "[%2d] %-24s %s", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL");
    out << line << "  " << r.details << std::endl;
    report.push_back(to_json(r));
    ok = ok && r.passed;
  });
  write_json(cfg.report_path, {{"checks", report}, {"config", to_document(cfg)}, {"passed", ok}});
  return ok ? exit_ok : exit_check_failure;
}

int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.model();
  const Grid gf = cfg.grid();
  const double T = std::min(cfg.t_final, 1.0);
  StepConfig base = cfg.step_config();
  base.t_final = T;
  base.record_diagnostics = false;

  // Frozen peak path from the configured run on the finest grid.
  StepConfig c0 = base;
  c0.keep_all_snapshots = true;
  c0.snapshot_times.clear();
  const RunResult ref = run(gf, make_initial(cfg.initial, gf).W, cfg.mode, c0);
  if (ref.abort) {
    out << "solver abort in reference run: " << ref.abort->message << '\n';
    return exit_solver_abort;
  }
  const XdotPath frozen = XdotPath::from_trajectory(ref.trajectory, 1e-3);
  const OracleForm form = cfg.mode == Mode::nonlinear ? OracleForm::nonlinear : OracleForm::linearized;

  json table = json::array();
  char line[160];
  std::snprintf(line, sizeof line, "%8s %10s %14s %8s %14s %8s\n", "n_cells", "h", "L1(xdot=0)", "order",
                "L1(frozen)", "order");
  out << line;
  double prev0 = 0.0, prev1 = 0.0;
  for (int n : {cfg.n_cells / 4, cfg.n_cells / 2, cfg.n_cells}) {
    const Grid g = build_grid(p, cfg.L, n);
    const PairField W0 = make_initial(cfg.initial, g).W;
    double err[2];
    for (int which = 0; which < 2; ++which) {
      const XdotPath path = which == 0 ? XdotPath::constant(0.0, T, 1e-3) : frozen;
      StepConfig c = base;
      c.snapshot_times.clear();
      c.prescribed_xdot = [&path](double t) { return path.xdot(t); };
      const RunResult rr = run(g, W0, cfg.mode, c);
      if (rr.abort) {
        out << "solver abort: " << rr.abort->message << '\n';
        return exit_solver_abort;
      }
      DuhamelOptions opt;
      opt.form = form;
      const PairField Wo = duhamel_solve(g, W0, path, T, opt).W;
      double e = 0.0;
      for (int i = 0; i < g.n; ++i)
        e += (std::abs(rr.final_state.W.u[i] - Wo.u[i]) + std::abs(rr.final_state.W.v[i] - Wo.v[i])) * g.w_eta[i];
      err[which] = e * g.h;
    }
    const double o0 = prev0 > 0.0 ? std::log2(prev0 / err[0]) : NAN;
    const double o1 = prev1 > 0.0 ? std::log2(prev1 / err[1]) : NAN;
    std::snprintf(line, sizeof line, "%8d %10.4g %14.6e %8.3f %14.6e %8.3f\n", n, g.h, err[0], o0, err[1], o1);
    out << line;
    table.push_back({{"n_cells", n},
                     {"h", g.h},
                     {"error_zero_path", err[0]},
                     {"error_frozen_path", err[1]},
                     {"order_zero_path", std::isnan(o0) ? json(nullptr) : json(o0)},
                     {"order_frozen_path", std::isnan(o1) ? json(nullptr) : json(o1)}});
    prev0 = err[0];
    prev1 = err[1];
  }
  write_json(cfg.report_path, {{"t_final", T}, {"convergence", table}, {"config", to_document(cfg)}});
  return exit_ok;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  auto or_self = [](const std::vector<double>& v, double x) { return v.empty() ? std::vector<double>{x} : v; };
  const std::vector<double> chis = or_self(cfg.sweep_chi, cfg.chi);
  const std::vector<double> alphas = or_self(cfg.sweep_alpha, cfg.alpha);
  const std::vector<double> amps = or_self(cfg.sweep_amplitude, cfg.initial.amplitude);
  const std::vector<int> ns = cfg.sweep_n_cells.empty() ? std::vector<int>{cfg.n_cells} : cfg.sweep_n_cells;

  std::vector<RunConfig> points;
  for (double c : chis)
    for (double a : alphas)
      for (double e : amps)
        for (int n : ns) {
          json doc = to_document(cfg);
          doc["params"]["chi"] = c;
          doc["params"]["alpha"] = a;
          doc["initial"]["amplitude"] = e;
          doc["grid"]["n_cells"] = n;
          doc["outputs"]["snapshots"] = json::array();
          RunConfig pc = from_document(doc); // re-validates every point up front
          pc.series_path = numbered(cfg.series_path, points.size());
          points.push_back(pc);
        }

  struct Row {
    std::optional<RateFit> fit;
    std::optional<AbortInfo> abort;
    ConstantSet k;
    std::string error;
  };
  std::vector<Row> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const RunConfig& pc = points[i];
      try {
        const Grid g = pc.grid();
        const RunResult rr = run(g, make_initial(pc.initial, g).W, pc.mode, pc.step_config());
        write_series(pc.series_path, rr.series);
        rows[i].fit = wy_fit(rr.series);
        rows[i].abort = rr.abort;
        rows[i].k = theory_constants(pc.model(), pc.p_assumed, pc.initial.amplitude);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  unsigned threads = cfg.sweep_threads > 0 ? static_cast<unsigned>(cfg.sweep_threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream f = open_out(cfg.sweep_summary_path);
  f << "index,chi,alpha,amplitude,n_cells,gamma_hat,r2,delta,gamma_alpha0,gamma_alpha,status,series_path\n";
  bool any_abort = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const RunConfig& pc = points[i];
    const Row& r = rows[i];
    std::string status = "ok";
    if (!r.error.empty())
      status = "error";
    else if (r.abort)
      status = to_string(r.abort->kind);
    any_abort = any_abort || status != "ok";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s\n", i, pc.chi,
                  pc.alpha, pc.initial.amplitude, pc.n_cells, r.fit ? r.fit->gamma_hat : NAN, r.fit ? r.fit->r2 : NAN,
                  r.k.delta, r.k.gamma_alpha0, r.k.gamma_alpha, status.c_str(), pc.series_path.c_str());
    f << buf;
    out << "point " << i << ": chi " << pc.chi << ", alpha " << pc.alpha << ", eps " << pc.initial.amplitude
        << ", n " << pc.n_cells << " -> gamma_hat " << (r.fit ? r.fit->gamma_hat : NAN) << " [" << status << "]";
    if (!r.error.empty()) out << " " << r.error;
    out << '\n';
  }
  out << "summary written to " << cfg.sweep_summary_path << '\n';
  return any_abort ? exit_solver_abort : exit_ok;
}

int execute(Command c, const RunConfig& cfg, std::ostream& out) {
  switch (c) {
  case Command::run: return cmd_run(cfg, out);
  case Command::check: return cmd_check(cfg, out);
  case Command::oracle_compare: return cmd_oracle_compare(cfg, out);
  case Command::sweep: return cmd_sweep(cfg, out);
  }
  return exit_config_error;
}

} // namespace chemokin::runner

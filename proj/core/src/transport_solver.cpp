#include "chemokin/transport_solver.hpp"

#include <algorithm>
#include <cmath>

#include "chemokin/chemo_field.hpp"
#include "chemokin/hypocoercivity.hpp"

namespace chemokin {

Mode parse_mode(const std::string& s) {
  if (s == "nonlinear") return Mode::nonlinear;
  if (s == "linearized") return Mode::linearized;
  throw ConfigError("unknown mode '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::nonlinear ? "nonlinear" : "linearized"; }

std::string to_string(AbortKind k) {
  switch (k) {
  case AbortKind::speed_limit: return "speed-limit";
  case AbortKind::blow_up: return "blow-up";
  case AbortKind::single_peak_lost: return "single-peak-lost";
  case AbortKind::regime_lost: return "regime-lost";
  }
  return "?";
}

PairField rhs_nonlinear(const Grid& g, const PairField& W, double xdot) {
  const double chi = g.params.chi;
  PairField R(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double s = g.sign(i);
    const double d = W.u[i] - W.v[i];
    const double a = 2.0 * xdot * chi * s;
    R.u[i] = -a * W.u[i] - (1.0 - chi * s) * d - a;
    R.v[i] = -a * W.v[i] + (1.0 + chi * s) * d - a;
  }
  return R;
}

PairField rhs_linear(const Grid& g, const PairField& W, double xdot_lin) {
  const double chi = g.params.chi;
  PairField R(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double s = g.sign(i);
    const double d = W.u[i] - W.v[i];
    const double a = 2.0 * xdot_lin * chi * s;
    R.u[i] = -a - (1.0 - chi * s) * d;
    R.v[i] = -a + (1.0 + chi * s) * d;
  }
  return R;
}

PairField upwind_advection(const Grid& g, const PairField& W, double cu, double cv) {
  PairField A(g.n);
  const double ku = cu / g.h, kv = cv / g.h;
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const double ul = i > 0 ? W.u[i - 1] : 0.0;
    const double vr = i < n - 1 ? W.v[i + 1] : 0.0;
    A.u[i] = -ku * (W.u[i] - ul);
    A.v[i] = kv * (vr - W.v[i]);
  }
  return A;
}

namespace {

// Upwind edge values for edge e (between cells e-1 and e); ghost cells carry zero
// perturbation and the nearest steady weight.
struct EdgeValues {
  double gp, gm, etap, etam;
};

EdgeValues edge_values(const Grid& g, const PairField& W, int e) {
  const int n = g.n;
  const int l = e - 1, r = e;
  EdgeValues v;
  v.gp = l >= 0 ? g.w_eta[l] * W.u[l] : 0.0;
  v.gm = r < n ? g.w_eta[r] * W.v[r] : 0.0;
  v.etap = g.w_eta[l >= 0 ? l : 0];
  v.etam = g.w_eta[r < n ? r : n - 1];
  return v;
}

} // namespace

PairField full_tendency(const Grid& g, const PairField& W, double xdot, Mode mode) {
  const int n = g.n;
  const double chi = g.params.chi;
  const bool nl = mode == Mode::nonlinear;
  const double cp = nl ? 1.0 - xdot : 1.0, cm = nl ? 1.0 + xdot : 1.0;
  std::vector<double> Fp(n + 1), Fm(n + 1);
  for (int e = 0; e <= n; ++e) {
    const EdgeValues ev = edge_values(g, W, e);
    Fp[e] = cp * ev.gp - xdot * ev.etap;
    Fm[e] = -cm * ev.gm - xdot * ev.etam;
  }
  PairField T(n);
  const double ih = 1.0 / g.h;
  for (int i = 0; i < n; ++i) {
    const double s = g.sign(i);
    const double gp = g.w_eta[i] * W.u[i], gm = g.w_eta[i] * W.v[i];
    const double ex = -(1.0 + chi * s) * gp + (1.0 - chi * s) * gm;
    T.u[i] = (-(Fp[i + 1] - Fp[i]) * ih + ex) / g.w_eta[i];
    T.v[i] = (-(Fm[i + 1] - Fm[i]) * ih - ex) / g.w_eta[i];
  }
  return T;
}

double flux_balance_velocity(const Grid& g, const PairField& W, Mode mode) {
  const int n = g.n;
  const ModelParams& p = g.params;
  const double ra = p.sqrt_alpha();
  auto w = [&](int i) {
    if (i < 0 || i >= n) return 0.0;
    return g.sign(i) * (ra > 0.0 ? std::exp(-ra * std::abs(g.y[i])) : 1.0);
  };
  double num = 0.0, den = 0.0;
  for (int e = 0; e <= n; ++e) {
    const double dw = w(e) - w(e - 1);
    if (dw == 0.0) continue;
    const EdgeValues ev = edge_values(g, W, e);
    num += (ev.gp - ev.gm) * dw;
    double b = ev.etap + ev.etam;
    if (mode == Mode::nonlinear) b += ev.gp + ev.gm;
    den += b * dw;
  }
  if (mode == Mode::nonlinear && 0.5 * p.lambda * den < 0.1 * 4.0 * p.chi)
    throw RegimeLost("perturbative regime lost: peak velocity denominator too small");
  return num / den;
}

double stepping_velocity(const Grid& g, const PairField& W, double t, Mode mode,
                         const StepConfig& cfg) {
  if (cfg.prescribed_xdot) return cfg.prescribed_xdot(t);
  try {
    return flux_balance_velocity(g, W, mode);
  } catch (const RegimeLost& e) {
    throw SolverAbort(AbortKind::regime_lost, e.what());
  }
}

namespace {

void guard_speed(double xd, double t) {
  if (!std::isfinite(xd)) throw SolverAbort(AbortKind::blow_up, "non-finite peak velocity at t=" + std::to_string(t));
  if (std::abs(xd) >= 0.9)
    throw SolverAbort(AbortKind::speed_limit, "|xdot| >= 0.9 at t=" + std::to_string(t));
}

} // namespace

SolverState step(const Grid& g, const SolverState& s, const StepConfig& cfg, double t_stop) {
  const double xd0 = stepping_velocity(g, s.W, s.t, s.mode, cfg);
  guard_speed(xd0, s.t);
  double dt = cfg.cfl * g.h / (1.0 + std::abs(xd0));
  if (s.t + dt > t_stop) dt = t_stop - s.t;

  PairField W1 = s.W;
  {
    const PairField F = full_tendency(g, s.W, xd0, s.mode);
    for (int i = 0; i < g.n; ++i) {
      W1.u[i] += dt * F.u[i];
      W1.v[i] += dt * F.v[i];
    }
  }
  const double xd1 = stepping_velocity(g, W1, s.t + dt, s.mode, cfg);
  guard_speed(xd1, s.t + dt);
  const PairField F1 = full_tendency(g, W1, xd1, s.mode);

  SolverState out;
  out.mode = s.mode;
  out.W = PairField(g.n);
  for (int i = 0; i < g.n; ++i) {
    out.W.u[i] = 0.5 * s.W.u[i] + 0.5 * (W1.u[i] + dt * F1.u[i]);
    out.W.v[i] = 0.5 * s.W.v[i] + 0.5 * (W1.v[i] + dt * F1.v[i]);
  }
  if (!all_finite(out.W)) throw SolverAbort(AbortKind::blow_up, "non-finite field at t=" + std::to_string(s.t + dt));
  out.t = (t_stop - (s.t + dt) == 0.0) ? t_stop : s.t + dt;
  out.x = s.x + dt * 0.5 * (xd0 + xd1);
  out.xdot_last = xd0;
  return out;
}

void h1_watchdog(const Grid& g, const PairField& W) {
  const ChemoField f = solve_chemo(g, density(g, W), g.params.alpha);
  const PeakCheck pc = check_single_peak(g, f);
  if (!pc.single)
    throw SolverAbort(AbortKind::single_peak_lost,
                      "chemoattractant has " + std::to_string(pc.sign_changes) +
                          " critical points; single-peak hypothesis violated");
}

RunResult run(const Grid& g, const PairField& initial, Mode mode, const StepConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("cfl must be in (0,1]");
  if (cfg.diag_stride < 1) throw ConfigError("diag_stride must be >= 1");
  if (cfg.watchdog_stride < 1) throw ConfigError("watchdog_stride must be >= 1");

  RunResult res;
  SolverState s;
  s.W = initial;
  s.mode = mode;

  std::optional<DiscreteOperators> ops;
  if (cfg.record_diagnostics) ops.emplace(assemble_operators(g));

  std::vector<double> snaps = cfg.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto take_snapshot = [&](double xdot) { res.trajectory.snapshots.push_back({s.t, s.x, xdot, s.W}); };

  long k = 0;
  bool h1_ok = true;
  try {
    for (;;) {
      const bool final_step = s.t >= cfg.t_final;
      if (mode == Mode::nonlinear && !cfg.prescribed_xdot && k % cfg.watchdog_stride == 0) {
        try {
          h1_watchdog(g, s.W);
        } catch (const SolverAbort&) {
          h1_ok = false;
          if (ops) res.series.push_back(make_record(g, *ops, s.W, s.t, s.x, s.xdot_last,
                                                    false, cfg.delta, cfg.delta_alpha, false));
          throw;
        }
      }
      const bool want_record = cfg.record_diagnostics && (k % cfg.diag_stride == 0 || final_step);
      const bool want_snap = cfg.keep_all_snapshots ||
                             (next_snap < snaps.size() && std::abs(snaps[next_snap] - s.t) <= 1e-12);
      if (want_record || want_snap) {
        const double xd = stepping_velocity(g, s.W, s.t, mode, cfg);
        if (want_record)
          res.series.push_back(make_record(g, *ops, s.W, s.t, s.x, xd, mode == Mode::linearized,
                                           cfg.delta, cfg.delta_alpha, h1_ok));
        if (want_snap) take_snapshot(xd);
      }
      while (next_snap < snaps.size() && snaps[next_snap] <= s.t + 1e-12) ++next_snap;
      if (final_step) break;
      double t_stop = cfg.t_final;
      if (next_snap < snaps.size() && snaps[next_snap] < t_stop) t_stop = snaps[next_snap];
      s = step(g, s, cfg, t_stop);
      ++k;
    }
  } catch (const SolverAbort& e) {
    res.abort = AbortInfo{e.kind, e.what(), s.t};
  }
  if (cfg.record_diagnostics) fill_dissipation_lhs(res.series);
  res.final_state = s;
  res.steps = k;
  return res;
}

} // namespace chemokin

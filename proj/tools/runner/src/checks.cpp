#include "chemokin/runner/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "chemokin/characteristics_oracle.hpp"
#include "chemokin/chemo_field.hpp"
#include "chemokin/equilibrium.hpp"
#include "chemokin/hypocoercivity.hpp"
#include "chemokin/inequality_lab.hpp"
#include "chemokin/transport_solver.hpp"

namespace chemokin::runner {

namespace {

constexpr int kChecks = 13;
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kNames[kChecks] = {
    "steady_fixed_point",   "micro_coercivity",   "projection_identities", "a_operator_bounds",
    "poincare",             "interpolation",      "third_conservation_law", "dissipation_identity",
    "nonlinear_decay",      "linear_decay",       "oracle_equivalence",     "constant_table",
    "h1_watchdog",
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Sum of a few random Gaussians plus a random kink at the origin.
ScalarField random_scalar(const Grid& g, std::mt19937_64& rng, bool kink) {
  std::uniform_real_distribution<double> pos(-6.0, 6.0), wid(0.3, 2.5);
  std::normal_distribution<double> amp(0.0, 1.0);
  ScalarField f(g.n, 0.0);
  for (int k = 0; k < 5; ++k) {
    const double c = pos(rng), w = wid(rng), a = amp(rng);
    for (int i = 0; i < g.n; ++i) {
      const double z = (g.y[i] - c) / w;
      f[i] += a * std::exp(-z * z);
    }
  }
  if (kink) {
    const double b = amp(rng);
    for (int i = 0; i < g.n; ++i) f[i] += b * std::abs(g.y[i]) * std::exp(-g.y[i] * g.y[i]);
  }
  return f;
}

PairField random_pair(const Grid& g, std::mt19937_64& rng) {
  ScalarField u = random_scalar(g, rng, true);
  ScalarField v = random_scalar(g, rng, true);
  return PairField(std::move(u), std::move(v));
}

double weighted_l1(const Grid& g, const PairField& a, const PairField& b) {
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += (std::abs(a.u[i] - b.u[i]) + std::abs(a.v[i] - b.v[i])) * g.w_eta[i];
  return s * g.h;
}

// Pairwise log2 ratios of successive errors (coarse to fine).
std::vector<double> orders(const std::vector<double>& e) {
  std::vector<double> o;
  for (std::size_t k = 1; k < e.size(); ++k) o.push_back(std::log2(e[k - 1] / e[k]));
  return o;
}

double pair_sup(const PairField& W) { return std::max(sup_norm(W.u), sup_norm(W.v)); }

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

std::string list(const std::vector<double>& v, const char* f = "%.3e") {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fmt(f, v[k]);
  return s + "]";
}

CheckResult make(int id) {
  CheckResult r;
  r.id = id;
  r.name = kNames[id - 1];
  return r;
}

// 1
CheckResult steady_fixed_point(const SuiteScale& s) {
  CheckResult r = make(1);
  const Grid g = build_grid(make_params(s.chi, 0.0), s.L, s.n);
  StepConfig cfg;
  SolverState st;
  st.W = PairField(g.n);
  for (int k = 0; k < 10000; ++k) st = step(g, st, cfg, 1e300);
  r.measured = pair_sup(st.W);
  r.tolerance = 1e-13;
  r.passed = r.measured <= r.tolerance;
  r.details = "max |W| after 10000 steps, t = " + fmt("%.4g", st.t);
  return r;
}

// 2
CheckResult micro_coercivity(const SuiteScale& s) {
  CheckResult r = make(2);
  const Grid g = build_grid(make_params(s.chi, 0.0), s.L, s.n);
  const DiscreteOperators ops = assemble_operators(g);
  std::mt19937_64 rng(s.seed);
  double worst = 0.0;
  for (int k = 0; k < s.random_fields; ++k) {
    const PairField W = random_pair(g, rng);
    const double lhs = pair_inner(g, ops.apply_L(W), W);
    const double rhs = -2.0 * pair_norm2(g, pi_project(W).second);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, pair_norm2(g, W)));
  }
  r.measured = worst;
  r.tolerance = 1e-12;
  r.passed = worst <= r.tolerance;
  r.details = "max relative |<LW,W> + 2||(I-Pi)W||^2| over random fields";
  return r;
}

// 3
CheckResult projection_identities(const SuiteScale& s) {
  CheckResult r = make(3);
  const Grid g = build_grid(make_params(s.chi, 0.0), s.L, s.n);
  const DiscreteOperators ops = assemble_operators(g);
  std::mt19937_64 rng(s.seed + 1);
  double worst_ptp = 0.0, worst_pp = 0.0;
  for (int k = 0; k < s.random_fields; ++k) {
    const PairField W = random_pair(g, rng);
    worst_ptp = std::max(worst_ptp, pair_sup(ops.apply_Pi(ops.apply_TPi(W))));
    const PairField P = ops.apply_Pi(W);
    worst_pp = std::max(worst_pp, pair_sup(ops.apply_Pi(P) - P));
  }
  r.measured = std::max(worst_ptp, worst_pp);
  r.tolerance = 0.0;
  r.passed = r.measured == 0.0;
  r.details = "max |Pi T Pi W| = " + fmt("%.3e", worst_ptp) + ", max |Pi^2 W - Pi W| = " + fmt("%.3e", worst_pp);
  return r;
}

// 4
CheckResult a_operator_bounds(const SuiteScale& s) {
  CheckResult r = make(4);
  const ModelParams p = make_params(s.chi, 0.0);
  const Grid g = build_grid(p, s.L, s.n);
  const DiscreteOperators ops = assemble_operators(g);
  const double dth = theory_constants(p, s.p_assumed, s.eps).delta;
  std::mt19937_64 rng(s.seed + 2);
  double slack_a = 1e300, slack_eq = 1e300;
  for (int k = 0; k < s.random_fields; ++k) {
    const PairField Wy = spatial_derivative(g, random_pair(g, rng));
    const double na = std::sqrt(pair_norm2(g, ops.apply_A(Wy)));
    const double ni = std::sqrt(pair_norm2(g, pi_project(Wy).second));
    slack_a = std::min(slack_a, 0.5 * ni - na);
    const double n2 = pair_norm2(g, Wy);
    for (double d : {dth, 0.5, 0.9}) {
      const double ent = modified_entropy(ops, Wy, d);
      slack_eq = std::min({slack_eq, ent - 0.5 * (1.0 - d) * n2, 0.5 * (1.0 + d) * n2 - ent});
    }
  }

  // Consistency of the D-route with the zeta-route on h = 0.04, 0.02, 0.01.
  std::vector<double> errs;
  for (double h : {0.04, 0.02, 0.01}) {
    int n = static_cast<int>(std::lround(2.0 * s.L / h));
    n += n % 2;
    const Grid gh = build_grid(p, s.L, n);
    const DiscreteOperators oh = assemble_operators(gh);
    InitialSpec spec;
    spec.shape = Shape::random_smooth;
    spec.seed = s.seed + 3;
    spec.amplitude = 0.1;
    spec.constraint_mode = ConstraintMode::none;
    const PairField W = make_initial(spec, gh).W;
    const PairField a1 = oh.apply_A(spatial_derivative(gh, W));
    const PairField a2 = oh.apply_A_zeta(W);
    errs.push_back(std::sqrt(pair_norm2(gh, a1 - a2) / pair_norm2(gh, a1)));
  }
  const std::vector<double> ord = orders(errs);
  const double slack = std::min(slack_a, slack_eq);
  r.measured = min_of(ord);
  r.tolerance = 0.9;
  r.passed = slack >= -1e-10 && r.measured >= 0.9;
  r.details = "min slack ||A Wy|| bound " + fmt("%.3e", slack_a) + ", sandwich " + fmt("%.3e", slack_eq) +
              " (need >= -1e-10); zeta-route errors " + list(errs) + ", orders " + list(ord, "%.3f");
  return r;
}

// 5
CheckResult poincare(const SuiteScale& s) {
  CheckResult r = make(5);
  const Grid g = build_grid(make_params(s.chi, 0.0), s.L, s.n);
  std::mt19937_64 rng(s.seed + 4);
  double worst = 0.0;
  for (int k = 0; k < s.random_fields; ++k) worst = std::max(worst, check_poincare(g, random_scalar(g, rng, k % 2 == 1)));
  const double cap = 1.0 + 5.0 * g.h;

  // Witness y e^{(chi - d)|y|}: continuum ratio chi^2 / (chi^2 + d^2).
  const double d = 0.08;
  const Grid gw = build_grid(make_params(s.chi, 0.0), 200.0, 8000);
  ScalarField w(gw.n);
  for (int i = 0; i < gw.n; ++i) w[i] = gw.y[i] * std::exp((s.chi - d) * std::abs(gw.y[i]));
  const double witness = check_poincare(gw, w);

  r.measured = worst;
  r.tolerance = cap;
  r.passed = worst <= cap && witness >= 0.95;
  r.details = "max ratio " + fmt("%.6f", worst) + " (cap 1+5h = " + fmt("%.4f", cap) + "); witness ratio " +
              fmt("%.5f", witness) + " (need >= 0.95)";
  return r;
}

// 6
CheckResult interpolation(const SuiteScale& s) {
  CheckResult r = make(6);
  struct Case {
    double alpha;
    bool use_lambda;
  };
  double worst = 1e300, tol = 0.0;
  std::string det;
  std::mt19937_64 rng(s.seed + 5);
  for (Case c : {Case{0.0, false}, Case{0.25, true}, Case{1.0, true}}) {
    const ModelParams p = make_params(s.chi, c.alpha);
    const Grid g = build_grid(p, s.L, s.n);
    const double a = c.use_lambda ? p.lambda : 2.0 * s.chi, b = 2.0 * s.chi;
    double m = 1e300;
    for (int k = 0; k < s.random_fields; ++k) m = std::min(m, check_interpolation(g, random_scalar(g, rng, true), a, b));
    worst = std::min(worst, m);
    tol = -5.0 * g.h;
    det += fmt("(a=%.3g,", a) + fmt(" b=%.3g): ", b) + fmt("min slack %.3e; ", m);
  }
  r.measured = worst;
  r.tolerance = tol;
  r.passed = worst >= tol;
  r.details = det + "need >= -5h";
  return r;
}

// 7
CheckResult third_conservation_law(const SuiteScale& s) {
  CheckResult r = make(7);
  std::string det;
  bool ok = true;
  double worst_rel = 0.0;
  for (double alpha : {0.0, 0.25}) {
    const ModelParams p = make_params(s.chi, alpha);
    std::vector<double> res;
    double rel = 0.0;
    for (int n : {s.n / 2, s.n}) {
      const Grid g = build_grid(p, s.L, n);
      InitialSpec spec;
      spec.amplitude = s.eps;
      spec.diff_average = s.eps;
      spec.seed = s.seed;
      StepConfig cfg;
      cfg.t_final = 2.0;
      cfg.record_diagnostics = true;
      cfg.diag_stride = 1000000;
      const RunResult rr = run(g, make_initial(spec, g).W, Mode::linearized, cfg);
      if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);
      const ConservationReport rep = check_conservation(rr.series, true, alpha);
      res.push_back(rep.third_at_end);
      const double d0 = std::abs(rr.series.front().third_law);
      rel = d0 > 0.0 ? rep.third_at_end / d0 : (rep.third_at_end == 0.0 ? 0.0 : 1e300);
    }
    const double factor = res[1] > 0.0 ? res[0] / res[1] : (res[0] <= 1e-15 ? kInf : 0.0);
    const bool pass = rel <= 0.01 && factor >= 1.8;
    ok = ok && pass;
    worst_rel = std::max(worst_rel, rel);
    det += fmt("alpha=%.2f: ", alpha) + fmt("relative residual %.3e, ", rel) + fmt("refinement factor %.2f; ", factor);
  }
  r.measured = worst_rel;
  r.tolerance = 0.01;
  r.passed = ok;
  r.details = det + "need <= 0.01 and factor >= 1.8";
  return r;
}

// 8
CheckResult dissipation_identity(const SuiteScale& s) {
  CheckResult r = make(8);
  struct Case {
    double alpha;
    Mode mode;
  };
  bool ok = true;
  double worst_factor = kInf;
  std::string det;
  for (Case c : {Case{0.0, Mode::nonlinear}, Case{0.25, Mode::linearized}}) {
    const ModelParams p = make_params(s.chi, c.alpha);
    std::vector<double> res;
    for (int n : {s.n / 4, s.n / 2, s.n}) {
      const Grid g = build_grid(p, s.L, n);
      InitialSpec spec;
      spec.amplitude = s.eps;
      spec.seed = s.seed;
      StepConfig cfg;
      cfg.t_final = 1.0;
      cfg.watchdog_stride = 1000000;
      const RunResult rr = run(g, make_initial(spec, g).W, c.mode, cfg);
      if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);
      // The first 0.1 time units hold the layer where the kink at the origin forms.
      res.push_back(verify_dissipation_identity(rr.series, 0.1, cfg.t_final));
    }
    std::vector<double> f;
    for (std::size_t k = 1; k < res.size(); ++k)
      f.push_back(res[k] > 0.0 ? res[k - 1] / res[k] : (res[k - 1] <= 1e-18 ? kInf : 0.0));
    const double fm = min_of(f);
    ok = ok && fm >= 1.8;
    worst_factor = std::min(worst_factor, fm);
    det += std::string(to_string(c.mode)) + fmt(" alpha=%.2f: residuals ", c.alpha) + list(res) + "; ";
  }
  r.measured = worst_factor;
  r.tolerance = 1.8;
  r.passed = ok;
  r.details = det + "window [0.1, 1], need factor >= 1.8 per halving";
  return r;
}

// 9
CheckResult nonlinear_decay(const SuiteScale& s) {
  CheckResult r = make(9);
  r.tolerance = 0.98;
  if (s.eps == 0.0) {
    r.passed = true;
    r.measured = 1.0;
    r.details = "zero amplitude: W stays 0, decay statements hold trivially";
    return r;
  }
  const ModelParams p = make_params(s.chi, 0.0);
  const Grid g = build_grid(p, s.L, s.n);
  InitialSpec spec;
  spec.amplitude = s.eps;
  spec.seed = s.seed;
  StepConfig cfg;
  cfg.t_final = 10.0;
  cfg.delta = theory_constants(p, s.p_assumed, s.eps).delta;
  const RunResult rr = run(g, make_initial(spec, g).W, Mode::nonlinear, cfg);
  if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);

  std::vector<std::pair<double, double>> pts;
  double bound_excess = -1e300;
  int valid = 0;
  double x5 = 0.0;
  bool have5 = false;
  for (const auto& rec : rr.series) {
    pts.emplace_back(rec.t, rec.normWy2);
    if (rec.xdot_bound_valid) {
      ++valid;
      bound_excess = std::max(bound_excess, std::abs(rec.xdot) - rec.xdot_bound);
    }
    if (!have5 && rec.t >= 5.0) {
      x5 = rec.x;
      have5 = true;
    }
  }
  const RateFit fit = fit_decay_rate(pts, 1.0, 10.0);
  const double ratio = std::sqrt(rr.series.back().normWy2 / rr.series.front().normWy2);
  const double x0 = rr.series.front().x, x10 = rr.series.back().x;
  const double cauchy_lhs = std::abs(x10 - x5), cauchy_rhs = 0.1 * std::abs(x5 - x0) + 1e-6;

  const bool fit_ok = fit.gamma_hat > 0.0 && fit.r2 >= 0.98;
  const bool decay_ok = ratio <= 0.2;
  const bool bound_ok = valid == 0 || bound_excess <= 1e-8;
  const bool cauchy_ok = cauchy_lhs <= cauchy_rhs;
  r.measured = fit.r2;
  r.passed = fit_ok && decay_ok && bound_ok && cauchy_ok;
  r.details = fmt("gamma_hat %.4f", fit.gamma_hat) + fmt(", r2 %.4f (need >= 0.98)", fit.r2) +
              fmt("; ||Wy(10)||/||Wy(0)|| %.3e (need <= 0.2)", ratio) +
              fmt("; xdot bound valid at %.0f records", valid) +
              (valid ? fmt(", max |xdot|-bound %.3e", bound_excess) : std::string()) +
              fmt("; |x(10)-x(5)| %.3e", cauchy_lhs) + fmt(" vs %.3e", cauchy_rhs);
  return r;
}

// 10
CheckResult linear_decay(const SuiteScale& s) {
  CheckResult r = make(10);
  const ModelParams p = make_params(s.chi, 0.25);
  const ConstantSet k = theory_constants(p, s.p_assumed, s.eps);
  const double gam = k.gamma_alpha;
  r.tolerance = 0.9 * 2.0 * gam;
  if (s.eps == 0.0) {
    r.passed = true;
    r.measured = 0.0;
    r.details = "zero amplitude: the entropy is identically 0";
    return r;
  }
  const Grid g = build_grid(p, s.L, s.n);
  InitialSpec spec;
  spec.amplitude = s.eps;
  spec.seed = s.seed;
  spec.diff_average = 0.0;
  StepConfig cfg;
  cfg.t_final = 10.0;
  cfg.delta_alpha = k.delta_alpha;
  cfg.delta = k.delta_alpha;
  const RunResult rr = run(g, make_initial(spec, g).W, Mode::linearized, cfg);
  if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);
  std::vector<std::pair<double, double>> pts;
  const double L0 = rr.series.front().entropyLalpha;
  double env = 0.0;
  for (const auto& rec : rr.series) {
    pts.emplace_back(rec.t, rec.entropyLalpha);
    env = std::max(env, rec.entropyLalpha / (L0 * std::exp(-2.0 * gam * rec.t)));
  }
  const RateFit fit = fit_decay_rate(pts, 1.0, 10.0);
  r.measured = fit.gamma_hat;
  r.passed = fit.gamma_hat >= r.tolerance && env <= 1.05;
  r.details = fmt("fitted rate %.4f", fit.gamma_hat) + fmt(" vs 2 gamma_theory %.4f", 2.0 * gam) +
              fmt(" (delta_alpha %.4f)", k.delta_alpha) + fmt("; max L_alpha(t)/(L_alpha(0)e^{-2 gamma t}) %.4f", env) +
              " (need <= 1.05)";
  return r;
}

// 11
CheckResult oracle_equivalence(const SuiteScale& s) {
  CheckResult r = make(11);
  const ModelParams p = make_params(s.chi, 0.0);
  InitialSpec spec;
  spec.amplitude = s.eps;
  spec.seed = s.seed;

  // Frozen path from a nonlinear run on the finest grid.
  const Grid gf = build_grid(p, s.L, s.n);
  StepConfig c0;
  c0.t_final = 1.0;
  c0.record_diagnostics = false;
  c0.keep_all_snapshots = true;
  const RunResult ref = run(gf, make_initial(spec, gf).W, Mode::nonlinear, c0);
  if (ref.abort) throw SolverAbort(ref.abort->kind, ref.abort->message);
  const XdotPath frozen = XdotPath::from_trajectory(ref.trajectory, 1e-3);
  const XdotPath zero = XdotPath::constant(0.0, 1.0, 1e-3);

  auto study = [&](const XdotPath& path) {
    std::vector<double> e;
    for (int n : {s.n / 4, s.n / 2, s.n}) {
      const Grid g = build_grid(p, s.L, n);
      const PairField W0 = make_initial(spec, g).W;
      StepConfig c;
      c.t_final = 1.0;
      c.record_diagnostics = false;
      c.prescribed_xdot = [&path](double t) { return path.xdot(t); };
      const RunResult rr = run(g, W0, Mode::nonlinear, c);
      if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);
      e.push_back(weighted_l1(g, rr.final_state.W, duhamel_solve(g, W0, path, 1.0).W));
    }
    return e;
  };
  const std::vector<double> ez = study(zero), ef = study(frozen);

  std::vector<double> ej;
  for (int n : {s.n / 2, s.n, 2 * s.n}) {
    const Grid g = build_grid(p, s.L, n);
    StepConfig c;
    c.t_final = 0.5;
    c.record_diagnostics = false;
    c.keep_all_snapshots = true;
    const RunResult rr = run(g, make_initial(spec, g).W, Mode::nonlinear, c);
    if (rr.abort) throw SolverAbort(rr.abort->kind, rr.abort->message);
    const auto [ju, jv] = jump_representation(g, rr.trajectory, 0.5);
    const PairField Wy = spatial_derivative(g, rr.final_state.W);
    ej.push_back(std::abs(ju - jump_average(g, Wy.u)) + std::abs(jv - jump_average(g, Wy.v)));
  }

  auto order_ok = [](const std::vector<double>& e, double& worst) {
    if (e.back() <= 1e-13) return true; // nothing to converge (zero data)
    const double o = min_of(orders(e));
    worst = std::min(worst, o);
    return o >= 0.9;
  };
  double worst = 1e300;
  const bool ok = order_ok(ez, worst) & order_ok(ef, worst) & order_ok(ej, worst);
  r.measured = worst == 1e300 ? 0.0 : worst;
  r.tolerance = 0.9;
  r.passed = ok;
  r.details = "xdot=0 L1 errors " + list(ez) + ", frozen path " + list(ef) + ", jump representation " + list(ej) +
              "; need refinement order >= 0.9";
  return r;
}

// 12
CheckResult constant_table(const SuiteScale&) {
  CheckResult r = make(12);
  const ConstantSet k = theory_constants(make_params(0.5, 0.0), 0.02, 0.01);
  const double s = std::sqrt(0.5);
  const double errs[] = {std::abs(k.mu - 2.0), std::abs(k.c0 - 4.0 * s), std::abs(k.c1 - 8.0 * s),
                         std::abs(k.c2 - 2.0), std::abs(k.c3 - 1.0)};
  r.measured = *std::max_element(std::begin(errs), std::end(errs));
  r.tolerance = 1e-12;
  r.passed = r.measured <= r.tolerance;
  r.details = fmt("mu %.15g", k.mu) + fmt(", c0 %.15g", k.c0) + fmt(", c1 %.15g", k.c1) + fmt(", c2 %.15g", k.c2) +
              fmt(", c3 %.15g", k.c3);
  return r;
}

// 13
CheckResult h1_watchdog_check(const SuiteScale& s) {
  CheckResult r = make(13);
  const ModelParams p = make_params(s.chi, 25.0);
  const Grid g = build_grid(p, s.L, s.n);
  InitialSpec spec;
  spec.shape = Shape::two_bump;
  spec.amplitude = 2.0;
  spec.center = 3.0;
  spec.width = 0.3;
  spec.constraint_mode = ConstraintMode::none;
  const PairField W0 = make_initial(spec, g).W;
  const PeakCheck pc = check_single_peak(g, solve_chemo(g, density(g, W0), p.alpha));
  StepConfig cfg;
  cfg.t_final = 1.0;
  const RunResult rr = run(g, W0, Mode::nonlinear, cfg);
  const bool aborted = rr.abort && rr.abort->kind == AbortKind::single_peak_lost;
  r.measured = pc.sign_changes;
  r.tolerance = 1.0;
  r.passed = !pc.single && aborted;
  r.details = fmt("Sy sign changes %.0f", pc.sign_changes) +
              (aborted ? "; run aborted: " + rr.abort->message : std::string("; run did not abort"));
  return r;
}

} // namespace

SuiteScale suite_scale(const RunConfig& cfg) {
  SuiteScale s;
  s.chi = cfg.chi;
  s.L = cfg.L;
  s.n = cfg.n_cells;
  s.eps = cfg.initial.amplitude;
  s.seed = cfg.seed;
  s.p_assumed = cfg.p_assumed;
  return s;
}

int suite_size() { return kChecks; }

const char* check_name(int id) { return (id >= 1 && id <= kChecks) ? kNames[id - 1] : "unknown"; }

CheckResult run_check(int id, const SuiteScale& s) {
  using Fn = CheckResult (*)(const SuiteScale&);
  static const Fn fns[kChecks] = {steady_fixed_point, micro_coercivity,       projection_identities,
                                  a_operator_bounds,  poincare,               interpolation,
                                  third_conservation_law, dissipation_identity, nonlinear_decay,
                                  linear_decay,       oracle_equivalence,     constant_table,
                                  h1_watchdog_check};
  if (id < 1 || id > kChecks) throw std::out_of_range("no check with id " + std::to_string(id));
  try {
    return fns[id - 1](s);
  } catch (const std::exception& e) {
    CheckResult r = make(id);
    r.passed = false;
    r.details = std::string("error: ") + e.what();
    return r;
  }
}

std::vector<CheckResult> run_suite(const SuiteScale& s, const std::vector<int>& ids,
                                   const std::function<void(const CheckResult&)>& on_result) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kChecks; ++i) todo.push_back(i);
  std::vector<CheckResult> out;
  for (int id : todo) {
    out.push_back(run_check(id, s));
    if (on_result) on_result(out.back());
  }
  return out;
}

nlohmann::json to_json(const CheckResult& r) {
  return {{"id", r.id},           {"name", r.name},           {"passed", r.passed},
          {"measured", r.measured}, {"tolerance", r.tolerance}, {"details", r.details}};
}

} // namespace chemokin::runner

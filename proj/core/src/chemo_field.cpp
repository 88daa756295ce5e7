#include "chemokin/chemo_field.hpp"

#include <cmath>
#include <limits>

namespace chemokin {

ChemoField solve_chemo(const Grid& g, const ScalarField& rho, double alpha) {
  if (static_cast<int>(rho.size()) != g.n) throw std::invalid_argument("field does not match grid");
  for (double r : rho)
    if (r < -1e-12 || !std::isfinite(r)) throw std::invalid_argument("density must be nonnegative");
  const int n = g.n;
  const double h = g.h;
  ChemoField f;
  f.alpha = alpha;
  f.S.assign(n, 0.0);
  f.Sy.assign(n, 0.0);
  if (alpha > 0.0) {
    const double k = std::sqrt(alpha);
    const double q = std::exp(-k * h);
    std::vector<double> F(n), B(n);
    F[0] = rho[0] * h;
    for (int i = 1; i < n; ++i) F[i] = q * F[i - 1] + rho[i] * h;
    B[n - 1] = 0.0;
    for (int i = n - 2; i >= 0; --i) B[i] = q * (B[i + 1] + rho[i + 1] * h);
    for (int i = 0; i < n; ++i) {
      f.S[i] = (F[i] + B[i]) / (2.0 * k);
      f.Sy[i] = -0.5 * (F[i] - rho[i] * h - B[i]);
    }
  } else {
    double total = 0.0;
    for (double r : rho) total += r * h;
    double below = 0.0;
    for (int i = 0; i < n; ++i) {
      const double above = total - below - rho[i] * h;
      f.Sy[i] = -0.5 * (below - above);
      below += rho[i] * h;
    }
    f.S_absolute = false;
    for (int i = 1; i < n; ++i) f.S[i] = f.S[i - 1] + 0.5 * h * (f.Sy[i - 1] + f.Sy[i]);
  }
  return f;
}

ScalarField density(const Grid& g, const PairField& W) {
  ScalarField r(g.n);
  for (int i = 0; i < g.n; ++i) r[i] = (1.0 + 0.5 * (W.u[i] + W.v[i])) * g.w_eta[i];
  return r;
}

PeakCheck check_single_peak(const Grid& g, const ChemoField& field) {
  PeakCheck pc;
  int prev_sign = 0, prev_idx = -1;
  int first_sign = 0;
  for (int i = 0; i < g.n; ++i) {
    const double s = field.Sy[i];
    const int sg = (s > 0) - (s < 0);
    if (sg == 0) continue;
    if (first_sign == 0) first_sign = sg;
    if (prev_sign != 0 && sg != prev_sign) {
      ++pc.sign_changes;
      pc.position = 0.5 * (g.y[prev_idx] + g.y[i]);
    }
    prev_sign = sg;
    prev_idx = i;
  }
  pc.single = pc.sign_changes == 1 && first_sign > 0;
  return pc;
}

double peak_velocity(const Grid& g, const PairField& W) {
  const ModelParams& p = g.params;
  const double u0 = jump_average(g, W.u), v0 = jump_average(g, W.v);
  double num = p.lambda * (u0 - v0);
  double den = 4.0 * p.chi + p.lambda * (u0 + v0);
  if (p.alpha > 0.0) {
    ScalarField d(g.n), s(g.n);
    for (int i = 0; i < g.n; ++i) {
      d[i] = W.u[i] - W.v[i];
      s[i] = W.u[i] + W.v[i];
    }
    const double ra = p.sqrt_alpha();
    num -= ra * weighted_average(g, d, p.lambda);
    den -= ra * weighted_average(g, s, p.lambda);
  }
  if (den < 0.1 * 4.0 * p.chi) throw RegimeLost("perturbative regime lost: peak velocity denominator too small");
  return num / den;
}

double peak_velocity_lin(const Grid& g, const PairField& W) {
  const ModelParams& p = g.params;
  const double u0 = jump_average(g, W.u), v0 = jump_average(g, W.v);
  double corr = 0.0;
  if (p.alpha > 0.0) {
    ScalarField d(g.n);
    for (int i = 0; i < g.n; ++i) d[i] = W.u[i] - W.v[i];
    corr = 0.5 * p.sqrt_alpha() * weighted_inner(g, d, ScalarField(g.n, 1.0), p.lambda);
  }
  return p.lambda / (4.0 * p.chi) * (u0 - v0 - corr);
}

XdotBound xdot_bound(const Grid& g, const PairField& W, const PairField& Wy) {
  const ModelParams& p = g.params;
  XdotBound b;
  b.mu = 4.0 * p.chi * std::sqrt(2.0 * (p.chi + p.sqrt_alpha())) / p.lambda;
  const PairNorms nr = pair_norms(g, W, Wy);
  const double macro = std::sqrt(nr.PiWy2) + 2.0 * p.chi * std::sqrt(nr.PiW2);
  const double micro = std::sqrt(nr.IPiWy2) + 2.0 * p.chi * std::sqrt(nr.IPiW2);
  b.valid = b.mu > macro;
  b.bound = b.valid ? micro / (b.mu - macro) : std::numeric_limits<double>::quiet_NaN();
  return b;
}

} // namespace chemokin

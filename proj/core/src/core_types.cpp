#include "chemokin/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chemokin {

double ModelParams::sqrt_alpha() const { return std::sqrt(alpha); }

ModelParams make_params(double chi, double alpha) {
  if (!(chi > 0.0 && chi < 1.0)) throw ConfigError("chi must be in (0,1)");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 0");
  ModelParams p;
  p.chi = chi;
  p.alpha = alpha;
  p.sigma = 2.0;
  p.mass = 1.0 / chi;
  p.lambda = 2.0 * chi + std::sqrt(alpha);
  p.normalized = true;
  return p;
}

ModelParams make_params_non_normalized(double chi, double alpha, double sigma) {
  ModelParams p = make_params(chi, alpha);
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  p.sigma = sigma;
  p.normalized = (sigma == 2.0);
  return p;
}

PairField& PairField::operator+=(const PairField& o) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] += o.u[i];
    v[i] += o.v[i];
  }
  return *this;
}

PairField& PairField::operator-=(const PairField& o) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] -= o.u[i];
    v[i] -= o.v[i];
  }
  return *this;
}

PairField& PairField::operator*=(double c) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] *= c;
    v[i] *= c;
  }
  return *this;
}

PairField operator+(PairField a, const PairField& b) { return a += b; }
PairField operator-(PairField a, const PairField& b) { return a -= b; }
PairField operator*(double c, PairField a) { return a *= c; }

std::vector<double> Grid::weights(double a) const {
  if (a == 2.0 * params.chi) return w_eta;
  if (a == params.lambda) return w_lambda;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::exp(-a * std::abs(y[i]));
  return w;
}

Grid build_grid(const ModelParams& params, double L, int n_cells) {
  if (n_cells < 16) throw ConfigError("n_cells must be >= 16");
  if (n_cells % 2 != 0) throw ConfigError("n_cells must be even");
  if (!(L > 0.0)) throw ConfigError("L must be > 0");
  const double rate = std::min(2.0 * params.chi, params.lambda);
  if (L * rate < 16.0) {
    std::ostringstream os;
    os << "L too small for the weight tail budget: L*min(2chi,lambda) = " << L * rate << " < 16";
    throw ConfigError(os.str());
  }
  Grid g;
  g.L = L;
  g.n = n_cells;
  g.h = 2.0 * L / n_cells;
  g.params = params;
  g.y.resize(n_cells);
  g.w_eta.resize(n_cells);
  g.w_lambda.resize(n_cells);
  const int m = n_cells / 2;
  for (int i = 0; i < m; ++i) {
    // Build from the right half and mirror so y_{n-1-i} = -y_i holds bit for bit.
    const double yr = (i + 0.5) * g.h;
    g.y[m + i] = yr;
    g.y[m - 1 - i] = -yr;
  }
  for (int i = 0; i < n_cells; ++i) {
    const double ay = std::abs(g.y[i]);
    g.w_eta[i] = std::exp(-2.0 * params.chi * ay);
    g.w_lambda[i] = std::exp(-params.lambda * ay);
  }
  return g;
}

namespace {

void require_size(const Grid& g, const ScalarField& f) {
  if (static_cast<int>(f.size()) != g.n) throw std::invalid_argument("field does not match grid");
}

double weighted_sum(const Grid& g, const ScalarField& f, const ScalarField& q,
                    const std::vector<double>& w) {
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += f[i] * q[i] * w[i];
  return s * g.h;
}

} // namespace

double weighted_inner(const Grid& g, const ScalarField& f, const ScalarField& q, double a) {
  require_size(g, f);
  require_size(g, q);
  if (a == 2.0 * g.params.chi) return weighted_sum(g, f, q, g.w_eta);
  if (a == g.params.lambda) return weighted_sum(g, f, q, g.w_lambda);
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += f[i] * q[i] * std::exp(-a * std::abs(g.y[i]));
  return s * g.h;
}

double weighted_average(const Grid& g, const ScalarField& f, double a) {
  require_size(g, f);
  const std::vector<double>& w =
      (a == 2.0 * g.params.chi) ? g.w_eta : (a == g.params.lambda ? g.w_lambda : g.weights(a));
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += f[i] * w[i];
  return 0.5 * a * s * g.h;
}

Stencil3 derivative_stencil(const Grid& g, int i) {
  const int m = g.n / 2;
  const double c = 1.0 / (2.0 * g.h);
  const bool left = i < m;
  const int first = left ? 0 : m;
  const int last = left ? m - 1 : g.n - 1;
  if (i == first) return {{i, i + 1, i + 2}, {-3.0 * c, 4.0 * c, -1.0 * c}};
  if (i == last) return {{i - 2, i - 1, i}, {1.0 * c, -4.0 * c, 3.0 * c}};
  return {{i - 1, i, i + 1}, {-c, 0.0, c}};
}

ScalarField spatial_derivative(const Grid& g, const ScalarField& f) {
  require_size(g, f);
  ScalarField d(g.n);
  for (int i = 0; i < g.n; ++i) {
    const Stencil3 s = derivative_stencil(g, i);
    d[i] = s.coef[0] * f[s.col[0]] + s.coef[1] * f[s.col[1]] + s.coef[2] * f[s.col[2]];
  }
  return d;
}

PairField spatial_derivative(const Grid& g, const PairField& W) {
  return PairField(spatial_derivative(g, W.u), spatial_derivative(g, W.v));
}

std::pair<double, double> one_sided_limits(const Grid& g, const ScalarField& f) {
  require_size(g, f);
  if (g.n < 8) throw std::invalid_argument("jump_average needs at least 8 cells");
  const int m = g.n / 2;
  // Lagrange weights at 0 for nodes h/2, 3h/2, 5h/2.
  constexpr double a0 = 15.0 / 8.0, a1 = -10.0 / 8.0, a2 = 3.0 / 8.0;
  const double right = a0 * f[m] + a1 * f[m + 1] + a2 * f[m + 2];
  const double left = a0 * f[m - 1] + a1 * f[m - 2] + a2 * f[m - 3];
  return {left, right};
}

double jump_average(const Grid& g, const ScalarField& f) {
  const auto [l, r] = one_sided_limits(g, f);
  return 0.5 * (l + r);
}

std::pair<PairField, PairField> pi_project(const PairField& W) {
  const std::size_t n = W.size();
  PairField P(n), Q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 0.5 * (W.u[i] + W.v[i]);
    P.u[i] = s;
    P.v[i] = s;
    Q.u[i] = W.u[i] - s;
    Q.v[i] = W.v[i] - s;
  }
  return {P, Q};
}

double pair_inner(const Grid& g, const PairField& a, const PairField& b) {
  require_size(g, a.u);
  require_size(g, b.u);
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) s += (a.u[i] * b.u[i] + a.v[i] * b.v[i]) * g.w_eta[i];
  return s * g.h;
}

double pair_norm2(const Grid& g, const PairField& a) { return pair_inner(g, a, a); }

PairNorms pair_norms(const Grid& g, const PairField& W, const PairField& Wy) {
  PairNorms r;
  double w2 = 0, p2 = 0, q2 = 0, wy2 = 0, py2 = 0, qy2 = 0;
  for (int i = 0; i < g.n; ++i) {
    const double e = g.w_eta[i];
    const double s = W.u[i] + W.v[i], d = W.u[i] - W.v[i];
    const double sy = Wy.u[i] + Wy.v[i], dy = Wy.u[i] - Wy.v[i];
    w2 += (W.u[i] * W.u[i] + W.v[i] * W.v[i]) * e;
    p2 += 0.5 * s * s * e;
    q2 += 0.5 * d * d * e;
    wy2 += (Wy.u[i] * Wy.u[i] + Wy.v[i] * Wy.v[i]) * e;
    py2 += 0.5 * sy * sy * e;
    qy2 += 0.5 * dy * dy * e;
  }
  r.W2 = w2 * g.h;
  r.PiW2 = p2 * g.h;
  r.IPiW2 = q2 * g.h;
  r.Wy2 = wy2 * g.h;
  r.PiWy2 = py2 * g.h;
  r.IPiWy2 = qy2 * g.h;
  r.H1 = std::sqrt(r.W2 + r.Wy2);
  return r;
}

double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); });
}

bool all_finite(const PairField& W) { return all_finite(W.u) && all_finite(W.v); }

} // namespace chemokin

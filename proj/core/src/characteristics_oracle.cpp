#include "chemokin/characteristics_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chemokin {

XdotPath XdotPath::constant(double value, double t_end, double dt) {
  return from_function([value](double) { return value; }, t_end, dt);
}

XdotPath XdotPath::from_function(const std::function<double(double)>& f, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw std::invalid_argument("path needs dt > 0 and t_end >= 0");
  XdotPath p;
  const int n = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
  p.dt_ = t_end > 0.0 ? t_end / n : dt;
  p.v_.resize(n + 1);
  for (int k = 0; k <= n; ++k) p.v_[k] = f(k * p.dt_);
  p.build_cumulative();
  return p;
}

XdotPath XdotPath::from_samples(const std::vector<double>& t, const std::vector<double>& xd,
                                double dt) {
  if (t.size() != xd.size() || t.size() < 2) throw std::invalid_argument("path needs >= 2 samples");
  auto interp = [&](double s) {
    if (s <= t.front()) return xd.front();
    if (s >= t.back()) return xd.back();
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    const double a = (s - t[j - 1]) / (t[j] - t[j - 1]);
    return (1.0 - a) * xd[j - 1] + a * xd[j];
  };
  return from_function(interp, t.back() - t.front(), dt);
}

XdotPath XdotPath::from_trajectory(const Trajectory& tr, double dt) {
  std::vector<double> t, xd;
  for (const Snapshot& s : tr.snapshots) {
    t.push_back(s.t);
    xd.push_back(s.xdot);
  }
  return from_samples(t, xd, dt);
}

void XdotPath::build_cumulative() {
  X_.assign(v_.size(), 0.0);
  for (std::size_t k = 1; k < v_.size(); ++k) X_[k] = X_[k - 1] + 0.5 * dt_ * (v_[k - 1] + v_[k]);
}

double XdotPath::xdot(double t) const {
  if (t <= 0.0) return v_.front();
  const double q = t / dt_;
  const std::size_t k = static_cast<std::size_t>(q);
  if (k + 1 >= v_.size()) return v_.back();
  const double a = q - static_cast<double>(k);
  return (1.0 - a) * v_[k] + a * v_[k + 1];
}

double XdotPath::displacement(double t) const {
  if (t <= 0.0) return 0.0;
  const double q = t / dt_;
  std::size_t k = static_cast<std::size_t>(q);
  if (k + 1 >= v_.size()) return X_.back() + (t - t_end()) * v_.back();
  const double a = q - static_cast<double>(k);
  const double tau = a * dt_;
  const double slope = (v_[k + 1] - v_[k]) / dt_;
  return X_[k] + v_[k] * tau + 0.5 * slope * tau * tau;
}

double XdotPath::sup_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

struct Sampler {
  const Grid& g;
  double inv_h;
  double y0;
  // Linear interpolation in the cell centers, zero outside them.
  double operator()(const ScalarField& f, double z) const {
    const double q = (z - y0) * inv_h;
    if (q < 0.0 || q > g.n - 1) return 0.0;
    int j = static_cast<int>(q);
    if (j >= g.n - 1) j = g.n - 2;
    const double a = q - j;
    return (1.0 - a) * f[j] + a * f[j + 1];
  }
};

double sgn(double z) { return (z > 0) - (z < 0); }

} // namespace

DuhamelResult duhamel_solve(const Grid& g, const PairField& W0, const XdotPath& path,
                            double t_final, const DuhamelOptions& opt) {
  DuhamelResult res;
  res.W = W0;
  if (t_final <= 0.0) return res;
  if (path.t_end() < t_final - 1e-12) throw OracleError("xdot path does not cover [0, t_final]");
  if (path.sup_abs() >= 1.0) throw OracleError("xdot path violates |xdot| < 1");

  const int n = g.n;
  const double chi = g.params.chi;
  const double ds0 = opt.ds > 0.0 ? opt.ds : g.h;
  const int n_steps = std::max(1, static_cast<int>(std::ceil(t_final / ds0 - 1e-9)));
  const double ds = t_final / n_steps;
  const int per_window = std::max(1, static_cast<int>(std::floor(opt.window / ds + 1e-9)));
  const bool moving = opt.form == OracleForm::nonlinear;
  const Sampler at{g, 1.0 / g.h, g.y[0]};

  std::vector<double> eta(n);
  for (int i = 0; i < n; ++i) eta[i] = g.w_eta[i];
  auto eta_at = [chi](double z) { return std::exp(-2.0 * chi * std::abs(z)); };

  // Tilded initial values relative to the window start: eta * u.
  ScalarField U0(n), V0(n);
  for (int i = 0; i < n; ++i) {
    U0[i] = eta[i] * W0.u[i];
    V0[i] = eta[i] * W0.v[i];
  }

  int done = 0;
  int window_index = 0;
  while (done < n_steps) {
    const int K = std::min(per_window, n_steps - done);
    const double tw = done * ds;
    std::vector<double> tau(K + 1), xd(K + 1), X(K + 1);
    for (int k = 0; k <= K; ++k) {
      tau[k] = k * ds;
      xd[k] = path.xdot(tw + tau[k]);
      X[k] = path.displacement(tw + tau[k]);
    }
    std::vector<ScalarField> U(K + 1, U0), V(K + 1, V0);

    double prev_diff = 0.0;
    int it = 0;
    for (;; ++it) {
      if (it >= opt.max_iter)
        throw OracleError("Picard iteration did not converge in window starting at t=" +
                          std::to_string(tw));
      double diff = 0.0;
      for (int k = 1; k <= K; ++k) {
        ScalarField Un(n), Vn(n);
        for (int i = 0; i < n; ++i) {
          const double yi = g.y[i];
          double su = 0.0, sv = 0.0;
          for (int m = 0; m <= k; ++m) {
            const double w = (m == 0 || m == k) ? 0.5 * ds : ds;
            const double s = tau[k] - tau[m];
            const double shift = moving ? X[k] - X[m] : 0.0;
            const double src = 2.0 * xd[m] * std::exp(tau[m]);
            const double zu = yi - s + shift;
            const double uu = at(U[m], zu), vu = at(V[m], zu);
            su += w * (vu - chi * sgn(zu) * (uu + vu + src * eta_at(zu)));
            const double zv = yi + s + shift;
            const double uv = at(U[m], zv), vv = at(V[m], zv);
            sv += w * (uv + chi * sgn(zv) * (uv + vv - src * eta_at(zv)));
          }
          const double shift0 = moving ? X[k] - X[0] : 0.0;
          Un[i] = at(U[0], yi - tau[k] + shift0) + su;
          Vn[i] = at(V[0], yi + tau[k] + shift0) + sv;
          diff = std::max({diff, std::abs(Un[i] - U[k][i]), std::abs(Vn[i] - V[k][i])});
        }
        U[k] = std::move(Un);
        V[k] = std::move(Vn);
      }
      if (it > 0 && prev_diff > 0.0) res.worst_contraction = std::max(res.worst_contraction, diff / prev_diff);
      prev_diff = diff;
      if (diff < opt.tol) break;
    }
    res.max_iterations = std::max(res.max_iterations, it + 1);
    const double decay = std::exp(-tau[K]);
    for (int i = 0; i < n; ++i) {
      U0[i] = decay * U[K][i];
      V0[i] = decay * V[K][i];
    }
    done += K;
    ++window_index;
  }
  res.windows = window_index;
  for (int i = 0; i < n; ++i) {
    res.W.u[i] = U0[i] / eta[i];
    res.W.v[i] = V0[i] / eta[i];
  }
  return res;
}

namespace {

// One-sided sampling: z <= 0 reads only left cells, z >= 0 only right cells.
// Between the last center and the origin the one-sided quadratic is used.
double sample_side(const Grid& g, const ScalarField& f, double z, bool left) {
  const int m = g.n / 2;
  const double h = g.h;
  if (left) {
    if (z < g.y[0]) return 0.0;
    if (z >= g.y[m - 1]) {
      const double x = z / h; // nodes at -1/2, -3/2, -5/2
      const double x0 = -0.5, x1 = -1.5, x2 = -2.5;
      const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
      const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
      const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
      return l0 * f[m - 1] + l1 * f[m - 2] + l2 * f[m - 3];
    }
  } else {
    if (z > g.y[g.n - 1]) return 0.0;
    if (z <= g.y[m]) {
      const double x = z / h;
      const double x0 = 0.5, x1 = 1.5, x2 = 2.5;
      const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
      const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
      const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
      return l0 * f[m] + l1 * f[m + 1] + l2 * f[m + 2];
    }
  }
  const double q = (z - g.y[0]) / h;
  int j = static_cast<int>(q);
  if (j >= g.n - 1) j = g.n - 2;
  const double a = q - j;
  return (1.0 - a) * f[j] + a * f[j + 1];
}

struct Traces {
  ScalarField u, v, uy, vy;
};

} // namespace

std::pair<double, double> jump_representation(const Grid& g, const Trajectory& history, double t) {
  const auto& S = history.snapshots;
  if (S.size() < 3) throw OracleError("history too short for the jump representation");
  if (std::abs(S.back().t - t) > 1e-9) throw OracleError("history must end at the evaluation time");
  if (std::abs(S.front().t) > 1e-12) throw OracleError("history must start at t = 0");
  const double chi = g.params.chi;
  const double xt = S.back().x;
  auto eta_at = [chi](double z) { return std::exp(-2.0 * chi * std::abs(z)); };

  std::vector<Traces> tr(S.size());
  for (std::size_t j = 0; j < S.size(); ++j) {
    tr[j].u = S[j].W.u;
    tr[j].v = S[j].W.v;
    tr[j].uy = spatial_derivative(g, S[j].W.u);
    tr[j].vy = spatial_derivative(g, S[j].W.v);
  }

  const std::size_t J = S.size() - 1;
  std::vector<double> fu(S.size()), fv(S.size()), svals(S.size());
  for (std::size_t j = 0; j <= J; ++j) {
    const double s = t - S[j].t;
    svals[j] = s;
    const double shift = xt - S[j].x;
    const double zm = -s + shift, zp = s + shift;
    if (zm > 1e-14 || zp < -1e-14) throw OracleError("characteristic foot crossed the origin; |xdot| bound violated");
    const double em = std::exp(-s) * eta_at(zm), ep = std::exp(-s) * eta_at(zp);
    const Traces& q = tr[j];
    const double um = sample_side(g, q.u, zm, true), vm = sample_side(g, q.v, zm, true);
    const double uym = sample_side(g, q.uy, zm, true), vym = sample_side(g, q.vy, zm, true);
    const double up = sample_side(g, q.u, zp, false), vp = sample_side(g, q.v, zp, false);
    const double uyp = sample_side(g, q.uy, zp, false), vyp = sample_side(g, q.vy, zp, false);
    fu[j] = em * ((vym + 2.0 * chi * vm) + chi * ((uym + vym) + 2.0 * chi * (um + vm))) +
            4.0 * chi * chi * S[j].xdot * em;
    fv[j] = ep * ((uyp - 2.0 * chi * up) + chi * ((uyp + vyp) - 2.0 * chi * (up + vp))) +
            4.0 * chi * chi * S[j].xdot * ep;
  }
  double iu = 0.0, iv = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    const double w = 0.5 * (svals[j] - svals[j + 1]);
    iu += w * (fu[j] + fu[j + 1]);
    iv += w * (fv[j] + fv[j + 1]);
  }

  const double zm0 = -t + xt - S[0].x, zp0 = t + xt - S[0].x;
  const Traces& q0 = tr[0];
  const double init_u = std::exp(-t) * eta_at(zm0) *
                        (sample_side(g, q0.uy, zm0, true) + 2.0 * chi * sample_side(g, q0.u, zm0, true));
  const double init_v = std::exp(-t) * eta_at(zp0) *
                        (sample_side(g, q0.vy, zp0, false) - 2.0 * chi * sample_side(g, q0.v, zp0, false));

  const double u0 = jump_average(g, S[J].W.u), v0 = jump_average(g, S[J].W.v);
  const double xd = S[J].xdot;
  const double ju = init_u + iu - chi / (1.0 - xd) * (u0 + v0 + 2.0 * xd);
  const double jv = init_v + iv + chi / (1.0 + xd) * (u0 + v0 - 2.0 * xd);
  return {ju, jv};
}

} // namespace chemokin

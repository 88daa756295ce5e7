#include "chemokin/hypocoercivity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace chemokin {

namespace {

using SpMat = DiscreteOperators::SpMat;
using Triplet = Eigen::Triplet<double>;

Eigen::Map<const Eigen::VectorXd> view(const ScalarField& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
}

ScalarField to_field(const Eigen::VectorXd& v) { return ScalarField(v.data(), v.data() + v.size()); }

} // namespace

DiscreteOperators assemble_operators(const Grid& g) {
  DiscreteOperators ops;
  ops.grid_ = std::make_shared<const Grid>(g);
  const int n = g.n;
  const double chi = g.params.chi;

  std::vector<Triplet> trip;
  trip.reserve(3 * n);
  for (int i = 0; i < n; ++i) {
    const Stencil3 s = derivative_stencil(g, i);
    for (int k = 0; k < 3; ++k)
      if (s.coef[k] != 0.0) trip.emplace_back(i, s.col[k], s.coef[k]);
  }
  ops.D_.resize(n, n);
  ops.D_.setFromTriplets(trip.begin(), trip.end());

  // Difference matrix for the A operator: centered across the origin so the
  // normal equations act on functions continuous at 0.
  trip.clear();
  {
    const double c = 1.0 / (2.0 * g.h);
    for (int i = 0; i < n; ++i) {
      if (i == 0) {
        trip.emplace_back(0, 0, -3.0 * c);
        trip.emplace_back(0, 1, 4.0 * c);
        trip.emplace_back(0, 2, -c);
      } else if (i == n - 1) {
        trip.emplace_back(i, i - 2, c);
        trip.emplace_back(i, i - 1, -4.0 * c);
        trip.emplace_back(i, i, 3.0 * c);
      } else {
        trip.emplace_back(i, i - 1, -c);
        trip.emplace_back(i, i + 1, c);
      }
    }
  }
  ops.DA_.resize(n, n);
  ops.DA_.setFromTriplets(trip.begin(), trip.end());

  ops.m_.resize(n);
  for (int i = 0; i < n; ++i) ops.m_[i] = g.w_eta[i] * g.h;

  // Conservative weighted Laplacian with zero flux through the outer edges:
  // M Delta_eta = -K, K symmetric positive semidefinite.
  std::vector<Triplet> kt;
  for (int i = 0; i + 1 < n; ++i) {
    const double ye = 0.5 * (g.y[i] + g.y[i + 1]);
    const double c = std::exp(-2.0 * chi * std::abs(ye)) / g.h;
    kt.emplace_back(i, i, c);
    kt.emplace_back(i + 1, i + 1, c);
    kt.emplace_back(i, i + 1, -c);
    kt.emplace_back(i + 1, i, -c);
  }
  SpMat K(n, n);
  K.setFromTriplets(kt.begin(), kt.end());
  SpMat Minv(n, n), Mdiag(n, n);
  {
    std::vector<Triplet> a, b;
    for (int i = 0; i < n; ++i) {
      a.emplace_back(i, i, 1.0 / ops.m_[i]);
      b.emplace_back(i, i, ops.m_[i]);
    }
    Minv.setFromTriplets(a.begin(), a.end());
    Mdiag.setFromTriplets(b.begin(), b.end());
  }
  ops.lap_ = -(Minv * K);
  ops.zeta_mat_ = Mdiag + K;

  const SpMat Dt = SpMat(ops.DA_.transpose());
  ops.normal_ = Mdiag + Dt * Mdiag * ops.DA_;

  ops.normal_solver_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(ops.normal_);
  if (ops.normal_solver_->info() != Eigen::Success)
    throw std::runtime_error("factorization of the normal-equations matrix failed");
  ops.zeta_solver_ = std::make_shared<Eigen::SimplicialLDLT<SpMat>>(ops.zeta_mat_);
  if (ops.zeta_solver_->info() != Eigen::Success)
    throw std::runtime_error("factorization of the zeta system failed");
  return ops;
}

PairField DiscreteOperators::apply_T(const PairField& W) const {
  const Grid& g = *grid_;
  const ScalarField uy = spatial_derivative(g, W.u), vy = spatial_derivative(g, W.v);
  const double chi = g.params.chi;
  PairField R(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double k = chi * g.sign(i) * (W.u[i] - W.v[i]);
    R.u[i] = uy[i] - k;
    R.v[i] = -vy[i] - k;
  }
  return R;
}

PairField DiscreteOperators::apply_L(const PairField& W) const {
  PairField R(W.size());
  for (std::size_t i = 0; i < W.size(); ++i) {
    const double d = W.u[i] - W.v[i];
    R.u[i] = -d;
    R.v[i] = d;
  }
  return R;
}

PairField DiscreteOperators::apply_Pi(const PairField& W) const { return pi_project(W).first; }

PairField DiscreteOperators::apply_TPi(const PairField& W) const {
  const Grid& g = *grid_;
  ScalarField s(g.n);
  for (int i = 0; i < g.n; ++i) s[i] = 0.5 * (W.u[i] + W.v[i]);
  ScalarField ds = to_field(DA_ * view(s));
  ScalarField mds(ds);
  for (double& x : mds) x = -x;
  return PairField(std::move(ds), std::move(mds));
}

PairField DiscreteOperators::apply_TPi_adjoint(const PairField& G) const {
  const int n = grid_->n;
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = m_[i] * (G.u[i] - G.v[i]);
  Eigen::VectorXd a = 0.5 * (DA_.transpose() * r);
  for (int i = 0; i < n; ++i) a[i] /= m_[i];
  ScalarField f = to_field(a);
  return PairField(f, f);
}

PairField DiscreteOperators::apply_A(const PairField& Wy) const {
  const int n = grid_->n;
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) r[i] = m_[i] * (Wy.u[i] - Wy.v[i]);
  const Eigen::VectorXd rhs = 0.5 * (DA_.transpose() * r);
  const Eigen::VectorXd a = normal_solver_->solve(rhs);
  ScalarField f = to_field(a);
  return PairField(f, f);
}

ScalarField DiscreteOperators::apply_laplace_eta(const ScalarField& f) const {
  return to_field(lap_ * view(f));
}

PairField DiscreteOperators::apply_A_zeta(const PairField& W) const {
  const int n = grid_->n;
  ScalarField d(n);
  for (int i = 0; i < n; ++i) d[i] = W.u[i] - W.v[i];
  // (M + K) zeta = M Delta_eta d = -K d; zeta_mat_ - M recovers K.
  const Eigen::VectorXd Md = m_.cwiseProduct(view(d));
  const Eigen::VectorXd Kd = zeta_mat_ * view(d) - Md;
  const Eigen::VectorXd zeta = zeta_solver_->solve(-Kd);
  ScalarField f(n);
  for (int i = 0; i < n; ++i) f[i] = -0.5 * zeta[i];
  return PairField(f, f);
}

double modified_entropy(const DiscreteOperators& ops, const PairField& Wy, double delta) {
  const Grid& g = ops.grid();
  const double base = 0.5 * pair_norm2(g, Wy);
  if (delta == 0.0) return base;
  return base + delta * pair_inner(g, ops.apply_A(Wy), Wy);
}

double modified_entropy_alpha(const DiscreteOperators& ops, const PairField& W, const PairField& Wy,
                              double delta) {
  const Grid& g = ops.grid();
  ScalarField d(g.n);
  for (int i = 0; i < g.n; ++i) d[i] = W.u[i] - W.v[i];
  const double j = jump_average(g, d);
  return modified_entropy(ops, Wy, delta) - 0.5 * g.params.sqrt_alpha() * j * j;
}

double dissipation_rhs(const Grid& g, const PairField& W, const PairField& Wy, double xdot) {
  const double chi = g.params.chi;
  const double u0 = jump_average(g, W.u), v0 = jump_average(g, W.v);
  const auto [uyl, uyr] = one_sided_limits(g, Wy.u);
  const auto [vyl, vyr] = one_sided_limits(g, Wy.v);
  const double juy = 0.5 * (uyl + uyr), jvy = 0.5 * (vyl + vyr);

  double diff2 = 0.0, signed_g = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double d = Wy.u[i] - Wy.v[i];
    diff2 += d * d * g.w_eta[i];
    signed_g += g.sign(i) * (Wy.u[i] * Wy.u[i] + Wy.v[i] * Wy.v[i]) * g.w_eta[i];
  }
  diff2 *= g.h;
  signed_g *= g.h;
  // Integral of g' eta over both half lines, g = u_y^2 + v_y^2.
  const double g_minus = uyl * uyl + vyl * vyl, g_plus = uyr * uyr + vyr * vyr;
  const double dg_eta = -(g_plus - g_minus) + 2.0 * chi * signed_g;

  return -diff2 + 2.0 * chi * (u0 - v0 - 2.0 * xdot) * (juy + jvy) - 0.5 * xdot * dg_eta -
         4.0 * chi * xdot * (u0 * juy + v0 * jvy);
}

double dissipation_rhs_lin(const Grid& g, const PairField& W, const PairField& Wy, double xdot_lin) {
  const double chi = g.params.chi;
  const double u0 = jump_average(g, W.u), v0 = jump_average(g, W.v);
  const double juy = jump_average(g, Wy.u), jvy = jump_average(g, Wy.v);
  const PairNorms nr = pair_norms(g, W, Wy);
  return -2.0 * nr.IPiWy2 + 2.0 * chi * (u0 - v0 - 2.0 * xdot_lin) * (juy + jvy);
}

double ConstantSet::g(double t) const {
  const double e = std::exp(-r * t);
  return 2.0 * (1.0 + 2.0 * chi) * c * e + (8.0 * p * chi * chi / r) * (1.0 - e);
}

ConstantSet theory_constants(const ModelParams& params, double p, double c) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("p must be in [0,1)");
  ConstantSet k;
  const double chi = params.chi, ra = params.sqrt_alpha(), lam = params.lambda;
  k.chi = chi;
  k.alpha = params.alpha;
  k.p = p;
  k.c = c;
  k.normalized = params.normalized;
  k.mu = 4.0 * chi * std::sqrt(2.0 * (chi + ra)) / lam;
  k.c0 = (chi * chi <= 0.5) ? 4.0 * std::sqrt(chi)
                            : 8.0 * chi * chi * std::sqrt(chi) /
                                  std::sqrt((2.0 * chi - 1.0) * (2.0 * chi + 1.0));
  k.c1 = 4.0 * std::sqrt(chi) * (1.0 + 2.0 * chi);
  k.c2 = 1.0 + 4.0 * chi * chi;
  k.c3 = 4.0 * chi * chi;
  k.beta1 = k.beta2 = (1.0 + chi) / chi;

  const double s2c = std::sqrt(2.0 * chi);
  const double base = 1.0 + k.c0 / (2.0 * s2c) + k.c1 / s2c + 0.5 * (k.beta1 + k.beta2);
  k.delta = 2.0 / (base + chi / (2.0 * (1.0 + chi)) - p * k.c3 / (chi * chi));
  k.eta = 2.0 - k.delta * base;
  k.mu0 = 2.0 / (1.0 - k.delta) *
          (k.eta - p * (chi + k.delta * (1.0 + 4.0 * chi) / (2.0 * k.beta2) + k.delta * k.c2));
  k.r = 1.0 + 2.0 * chi * (1.0 - p);
  k.g0 = std::sqrt(4.0 * (1.0 + p) / (k.r * (1.0 - p) * (1.0 - p)));
  k.lambda1 = 2.0 * (1.0 + 2.0 * chi) * c + 4.0 * p * chi / (1.0 - p) + 8.0 * p * chi * chi;
  k.lambda2 = 6.0 * s2c / (std::sqrt(1.0 - k.delta) * (1.0 - p)) *
              (1.0 + ((1.0 + 2.0 * chi) / (2.0 * chi)) * std::sqrt(1.0 + 4.0 * chi));
  k.gamma_alpha0 = 0.5 * (k.mu0 - 30.0 * k.lambda1 / (1.0 - k.delta));

  k.c0p = 1.0 + (1.0 + chi) / (2.0 * chi) + k.c0 / (2.0 * std::sqrt(2.0 * chi + ra)) +
          lam * (1.0 + 2.0 * chi) / (s2c * std::sqrt(chi + ra));
  k.c1p = (2.0 * chi + ra) / (chi + ra);
  k.c2p = chi / (2.0 * (1.0 + chi));
  k.delta_alpha = std::min(0.5, k.c1p / (k.c0p + k.c2p));
  k.gamma_alpha = k.delta_alpha * k.c2p / (1.0 + k.delta_alpha);

  k.p_ok_decay = p < chi / (16.0 * (1.0 + chi));
  k.p_ok_entropy = p <= std::min(1.0 / (4.0 * chi), chi / (8.0 * (1.0 + chi)));
  k.delta_ok = k.delta > 0.0 && k.delta < 1.0;
  return k;
}

} // namespace chemokin

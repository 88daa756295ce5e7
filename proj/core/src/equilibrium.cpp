#include "chemokin/equilibrium.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "chemokin/transport_solver.hpp"

namespace chemokin {

Shape parse_shape(const std::string& s) {
  if (s == "gaussian_bump") return Shape::gaussian_bump;
  if (s == "cosine_packet") return Shape::cosine_packet;
  if (s == "random_smooth") return Shape::random_smooth;
  if (s == "two_bump") return Shape::two_bump;
  throw ConfigError("unknown initial shape '" + s + "'");
}

ConstraintMode parse_constraint_mode(const std::string& s) {
  if (s == "project_all") return ConstraintMode::project_all;
  if (s == "project_mass_only") return ConstraintMode::project_mass_only;
  if (s == "none") return ConstraintMode::none;
  throw ConfigError("unknown constraint_mode '" + s + "'");
}

std::string to_string(Shape s) {
  switch (s) {
  case Shape::gaussian_bump: return "gaussian_bump";
  case Shape::cosine_packet: return "cosine_packet";
  case Shape::random_smooth: return "random_smooth";
  case Shape::two_bump: return "two_bump";
  }
  return "?";
}

std::string to_string(ConstraintMode m) {
  switch (m) {
  case ConstraintMode::project_all: return "project_all";
  case ConstraintMode::project_mass_only: return "project_mass_only";
  case ConstraintMode::none: return "none";
  }
  return "?";
}

SteadyState steady_state(const Grid& g) { return {g.w_eta}; }

double tumbling_kernel(double chi, double y, int v) {
  const double sy = (y > 0) - (y < 0);
  const double sv = (v > 0) - (v < 0);
  return 1.0 + chi * sy * sv;
}

Constraints evaluate_constraints(const Grid& g, const PairField& W) {
  Constraints c;
  ScalarField s(g.n), d(g.n);
  for (int i = 0; i < g.n; ++i) {
    s[i] = W.u[i] + W.v[i];
    d[i] = W.u[i] - W.v[i];
  }
  c.mass = weighted_average(g, s, 2.0 * g.params.chi);
  c.diff = weighted_average(g, d, g.params.lambda);
  c.center = weighted_average(g, spatial_derivative(g, s), g.params.lambda);
  return c;
}

namespace {

PairField raw_shape(const InitialSpec& sp, const Grid& g) {
  PairField W(g.n);
  const double e = sp.amplitude, c = sp.center, w = sp.width;
  auto gauss = [](double z) { return std::exp(-z * z); };
  switch (sp.shape) {
  case Shape::gaussian_bump:
    for (int i = 0; i < g.n; ++i) {
      const double z = (g.y[i] - c) / w;
      W.u[i] = e * gauss(z);
      W.v[i] = -0.5 * e * gauss(z + 0.5);
    }
    break;
  case Shape::cosine_packet:
    for (int i = 0; i < g.n; ++i) {
      const double z = (g.y[i] - c) / w;
      W.u[i] = e * std::cos(2.0 * z) * gauss(z);
      W.v[i] = e * std::sin(2.0 * z) * gauss(z);
    }
    break;
  case Shape::random_smooth: {
    std::mt19937_64 rng(sp.seed);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), wid(0.5, 1.5), amp(-1.0, 1.0);
    for (int k = 0; k < 6; ++k) {
      const double cu = c + pos(rng) * w, wu = wid(rng) * w, au = amp(rng);
      const double cv = c + pos(rng) * w, wv = wid(rng) * w, av = amp(rng);
      for (int i = 0; i < g.n; ++i) {
        W.u[i] += e * au * gauss((g.y[i] - cu) / wu);
        W.v[i] += e * av * gauss((g.y[i] - cv) / wv);
      }
    }
    break;
  }
  case Shape::two_bump:
    for (int i = 0; i < g.n; ++i) {
      const double b = gauss((g.y[i] - c) / w) + gauss((g.y[i] + c) / w);
      W.u[i] = e * b;
      W.v[i] = e * b;
    }
    break;
  }
  return W;
}

} // namespace

InitialData make_initial(const InitialSpec& sp, const Grid& g) {
  if (!(sp.amplitude >= 0.0)) throw ConfigError("initial.amplitude must be >= 0");
  if (!(sp.width > 0.0)) throw ConfigError("initial.width must be > 0");
  PairField W = raw_shape(sp, g);

  if (sp.constraint_mode != ConstraintMode::none) {
    // Correction profiles: even (phi, phi) moves the mass law, even (phi, -phi)
    // the difference law, odd (psi, psi) the centering law.
    PairField P[3] = {PairField(g.n), PairField(g.n), PairField(g.n)};
    for (int i = 0; i < g.n; ++i) {
      const double y = g.y[i];
      const double phi = std::exp(-y * y);
      const double psi = y * std::exp(-y * y);
      P[0].u[i] = phi;
      P[0].v[i] = phi;
      P[1].u[i] = phi;
      P[1].v[i] = -phi;
      P[2].u[i] = psi;
      P[2].v[i] = psi;
    }
    auto functionals = [&](const PairField& F) {
      const Constraints k = evaluate_constraints(g, F);
      return Eigen::Vector3d(k.mass, k.diff, k.center);
    };
    if (sp.constraint_mode == ConstraintMode::project_all) {
      Eigen::Matrix3d G;
      for (int j = 0; j < 3; ++j) G.col(j) = functionals(P[j]);
      const Eigen::Vector3d target(0.0, sp.diff_average, 0.0);
      Eigen::FullPivLU<Eigen::Matrix3d> lu(G);
      if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
        throw std::runtime_error("constraint projection system is singular");
      // Two passes so roundoff from the first solve is removed as well.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::Vector3d coef = lu.solve(functionals(W) - target);
        for (int j = 0; j < 3; ++j) W -= coef[j] * P[j];
      }
    } else {
      const double m0 = evaluate_constraints(g, P[0]).mass;
      for (int pass = 0; pass < 2; ++pass) W -= (evaluate_constraints(g, W).mass / m0) * P[0];
    }
  }

  for (int i = 0; i < g.n; ++i) {
    if (1.0 + W.u[i] <= 0.0 || 1.0 + W.v[i] <= 0.0)
      throw ConfigError("initial data makes the density nonpositive (1+u <= 0 or 1+v <= 0)");
  }
  if (!all_finite(W)) throw ConfigError("initial data is not finite");

  InitialData out;
  const PairField Wy = spatial_derivative(g, W);
  out.constraints = evaluate_constraints(g, W);
  out.sup_u = sup_norm(W.u);
  out.sup_v = sup_norm(W.v);
  out.sup_uy = sup_norm(Wy.u);
  out.sup_vy = sup_norm(Wy.v);
  out.W = std::move(W);
  return out;
}

double steady_residual(const Grid& g) {
  const PairField zero(g.n);
  const PairField r = full_tendency(g, zero, 0.0, Mode::nonlinear);
  return std::max(sup_norm(r.u), sup_norm(r.v));
}

} // namespace chemokin

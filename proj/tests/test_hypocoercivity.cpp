#include "doctest.h"

#include <cmath>
#include <random>

#include "chemokin/chemo_field.hpp"
#include "chemokin/equilibrium.hpp"
#include "chemokin/hypocoercivity.hpp"

using namespace chemokin;

namespace {

Grid grid(double chi, double alpha, int n = 2000) { return build_grid(make_params(chi, alpha), 20.0, n); }

PairField random_pair(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-5.0, 5.0), wid(0.3, 2.0);
  std::normal_distribution<double> amp;
  PairField W(g.n);
  for (ScalarField* f : {&W.u, &W.v})
    for (int k = 0; k < 4; ++k) {
      const double c = pos(rng), w = wid(rng), a = amp(rng);
      for (int i = 0; i < g.n; ++i) (*f)[i] += a * std::exp(-(g.y[i] - c) * (g.y[i] - c) / (w * w));
    }
  return W;
}

double ipi2(const Grid& g, const PairField& W) { return pair_norm2(g, pi_project(W).second); }

// chi = 0.5, alpha = 0.25, from the closed-form constant recipe
constexpr double kDeltaAlpha = 0.21989726618007258;
constexpr double kGammaAlpha = 0.03004314000809924;

} // namespace

TEST_CASE("kernels of L and T") {
  const Grid g = grid(0.5, 0.0);
  const DiscreteOperators ops = assemble_operators(g);
  PairField E(g.n);
  for (int i = 0; i < g.n; ++i) E.u[i] = E.v[i] = std::cos(g.y[i]);
  const PairField LE = ops.apply_L(E);
  CHECK(std::max(sup_norm(LE.u), sup_norm(LE.v)) == 0.0);
  const PairField C(ScalarField(g.n, 0.3), ScalarField(g.n, 0.3));
  const PairField TC = ops.apply_T(C);
  CHECK(std::max(sup_norm(TC.u), sup_norm(TC.v)) < 1e-12);
}

TEST_CASE("microscopic coercivity identity") {
  std::mt19937_64 rng(11);
  for (double chi : {0.3, 0.5, 0.8}) {
    const Grid g = build_grid(make_params(chi, 0.0), 30.0, 1500);
    const DiscreteOperators ops = assemble_operators(g);
    for (int k = 0; k < 100; ++k) {
      const PairField W = random_pair(g, rng);
      const double lhs = pair_inner(g, ops.apply_L(W), W), rhs = -2.0 * ipi2(g, W);
      REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("A operator: kernel, bound and cross-check") {
  const Grid g = grid(0.5, 0.0);
  const DiscreteOperators ops = assemble_operators(g);
  PairField E(g.n);
  for (int i = 0; i < g.n; ++i) E.u[i] = E.v[i] = std::sin(g.y[i]) * std::exp(-0.1 * g.y[i] * g.y[i]);
  const PairField AE = ops.apply_A(E);
  CHECK(std::max(sup_norm(AE.u), sup_norm(AE.v)) < 1e-13);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    const PairField W = random_pair(g, rng);
    const PairField A = ops.apply_A(W);
    REQUIRE(A.u == A.v);
    REQUIRE(std::sqrt(pair_norm2(g, A)) <= 0.5 * std::sqrt(ipi2(g, W)) * (1.0 + 1e-12));
  }

  // primary and zeta routes approach each other under refinement
  std::vector<double> diff;
  for (int n : {1000, 2000, 4000}) {
    const Grid gh = grid(0.5, 0.0, n);
    const DiscreteOperators oh = assemble_operators(gh);
    std::mt19937_64 r2(5);
    const PairField W = random_pair(gh, r2);
    const PairField a1 = oh.apply_A(spatial_derivative(gh, W)); // acts on W_y
    const PairField a2 = oh.apply_A_zeta(W);                    // acts on W
    diff.push_back(std::sqrt(pair_norm2(gh, a1 - a2) / pair_norm2(gh, a1)));
  }
  CHECK(diff[0] / diff[1] > 1.8);
  CHECK(diff[1] / diff[2] > 1.8);
}

TEST_CASE("modified entropy sandwich") {
  const Grid g = grid(0.5, 0.0);
  const DiscreteOperators ops = assemble_operators(g);
  const PairField Z(g.n);
  CHECK(modified_entropy(ops, Z, 0.3) == 0.0);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    const PairField W = random_pair(g, rng);
    const double n2 = pair_norm2(g, W);
    CHECK(modified_entropy(ops, W, 0.0) == doctest::Approx(0.5 * n2).epsilon(1e-15));
    for (double d : {0.1, 0.5, 0.9}) {
      const double e = modified_entropy(ops, W, d);
      REQUIRE(e >= 0.5 * (1 - d) * n2 * (1 - 1e-12));
      REQUIRE(e <= 0.5 * (1 + d) * n2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("alpha entropy") {
  const Grid g0 = grid(0.5, 0.0);
  const DiscreteOperators o0 = assemble_operators(g0);
  std::mt19937_64 rng(1);
  const PairField R = random_pair(g0, rng);
  CHECK(modified_entropy_alpha(o0, R, spatial_derivative(g0, R), 0.2) ==
        modified_entropy(o0, spatial_derivative(g0, R), 0.2));
  const PairField Z(g0.n);
  CHECK(modified_entropy_alpha(o0, Z, Z, 0.2) == 0.0);

  for (double alpha : {0.25, 1.0, 4.0}) {
    const Grid g = grid(0.5, alpha);
    const DiscreteOperators ops = assemble_operators(g);
    const double d = theory_constants(g.params, 0.0, 0.01).delta_alpha;
    const double ra = std::sqrt(alpha), chi = 0.5;
    for (Shape sh : {Shape::gaussian_bump, Shape::cosine_packet, Shape::random_smooth}) {
      InitialSpec sp;
      sp.shape = sh;
      sp.center = 0.2;
      const PairField W = make_initial(sp, g).W;
      const PairField Wy = spatial_derivative(g, W);
      const double n2 = pair_norm2(g, Wy), e = modified_entropy_alpha(ops, W, Wy, d);
      CHECK(e >= (0.5 * (1 - d) - ra / (4 * (chi + ra))) * n2);
      CHECK(e <= 0.5 * (1 + d) * n2);
    }
  }
}

TEST_CASE("dissipation identities: trivial states and term subsets") {
  const Grid g = grid(0.5, 0.0);
  PairField E(g.n);
  for (int i = 0; i < g.n; ++i) E.u[i] = E.v[i] = 0.01 * std::exp(-g.y[i] * g.y[i]);
  const PairField Ey = spatial_derivative(g, E);
  CHECK(dissipation_rhs(g, E, Ey, 0.0) == 0.0);
  CHECK(dissipation_rhs_lin(g, E, Ey, 0.0) == 0.0);

  // alpha = 0, zero difference average: xdot_lin = (u0 - v0)/2 cancels the trace term
  InitialSpec sp;
  sp.amplitude = 0.02;
  const PairField W = make_initial(sp, g).W;
  const PairField Wy = spatial_derivative(g, W);
  const double xl = peak_velocity_lin(g, W);
  CHECK(xl == doctest::Approx(0.5 * (jump_average(g, W.u) - jump_average(g, W.v))).epsilon(1e-12));
  CHECK(dissipation_rhs_lin(g, W, Wy, xl) == doctest::Approx(-2.0 * ipi2(g, Wy)).epsilon(1e-12));

  // the nonlinear identity reduces to the linear one as the amplitude goes to 0
  double prev = 0.0;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    const PairField Ws = s * W, Wsy = s * Wy;
    const double xd = 0.1 * s;
    const double a = dissipation_rhs(g, Ws, Wsy, xd), b = dissipation_rhs_lin(g, Ws, Wsy, xd);
    const double rel = std::abs(a - b) / std::abs(b);
    if (prev > 0.0) CHECK(rel < 0.2 * prev);
    prev = rel;
  }
}

TEST_CASE("theory constants") {
  const ConstantSet k = theory_constants(make_params(0.5, 0.0), 0.0, 0.01);
  CHECK(k.mu == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(k.c0 == doctest::Approx(4.0 * std::sqrt(0.5)).epsilon(1e-15));
  CHECK(k.c2p == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  const ConstantSet ka = theory_constants(make_params(0.5, 0.25), 0.0, 0.01);
  CHECK(ka.delta_alpha == doctest::Approx(kDeltaAlpha).epsilon(1e-14));
  CHECK(ka.gamma_alpha == doctest::Approx(kGammaAlpha).epsilon(1e-14));
  // the second branch of c0 for chi^2 > 1/2
  const ConstantSet kh = theory_constants(make_params(0.8, 0.0), 0.0, 0.01);
  CHECK(kh.c0 == doctest::Approx(8 * 0.64 * std::sqrt(0.8) / std::sqrt(0.6 * 2.6)).epsilon(1e-14));
  CHECK_THROWS_AS(theory_constants(make_params(0.5, 0.0), 1.5, 0.01), ConfigError);
}

#include "doctest.h"

#include <random>

#include "chemokin/core_types.hpp"
#include "oracles.hpp"

using namespace chemokin;

namespace {

Grid std_grid(double chi = 0.5, double alpha = 0.0, double L = 20.0, int n = 4000) {
  return build_grid(make_params(chi, alpha), L, n);
}

ScalarField sample(const Grid& g, const std::function<double(double)>& f) {
  ScalarField out(g.n);
  for (int i = 0; i < g.n; ++i) out[i] = f(g.y[i]);
  return out;
}

// int_R e^{-y^2} e^{-|y|} dy, frozen from oracle::gauss_laplace(1).
constexpr double kGaussLaplace1 = 1.0912827215300941;

} // namespace

TEST_CASE("make_params normalization and validation") {
  const ModelParams p = make_params(0.5, 0.25);
  CHECK(p.sigma == 2.0);
  CHECK(p.mass == doctest::Approx(2.0));
  CHECK(p.lambda == doctest::Approx(1.5));
  CHECK(p.normalized);
  CHECK_THROWS_AS(make_params(1.5, 0.0), ConfigError);
  CHECK_THROWS_AS(make_params(0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(make_params(0.5, -1.0), ConfigError);
  CHECK_FALSE(make_params_non_normalized(0.5, 0.0, 3.0).normalized);
}

TEST_CASE("build_grid layout") {
  const Grid g = std_grid();
  CHECK(g.h == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(g.y[g.n / 2] == doctest::Approx(0.005));
  CHECK(g.y[g.n / 2 - 1] == doctest::Approx(-0.005));
  CHECK(g.y[g.n / 2 + 1] == doctest::Approx(0.015));
  for (int i = 0; i < g.n; ++i) REQUIRE(g.y[i] == -g.y[g.n - 1 - i]);
  CHECK_THROWS_AS(build_grid(make_params(0.5, 0.0), 4.0, 100), ConfigError);
  CHECK_THROWS_AS(build_grid(make_params(0.5, 0.0), 20.0, 101), ConfigError);
  CHECK_THROWS_AS(build_grid(make_params(0.5, 0.0), 20.0, 14), ConfigError);
}

TEST_CASE("weighted_inner of constants") {
  const Grid g = std_grid();
  const ScalarField one(g.n, 1.0);
  // midpoint rule error ~ h^2/12 plus tail e^{-aL}
  CHECK(weighted_inner(g, one, one, 1.0) == doctest::Approx(2.0).epsilon(1e-5));
  for (double a : {0.8, 1.0, 1.5, 3.0})
    CHECK(weighted_inner(g, one, one, a) == doctest::Approx(2.0 / a).epsilon(1e-4));
}

TEST_CASE("weighted_inner matches the Gaussian-Laplace closed form") {
  CHECK(oracle::gauss_laplace(1.0) == doctest::Approx(kGaussLaplace1).epsilon(1e-15));
  CHECK(oracle::integrate_sym([](double y) { return std::exp(-y * y - std::abs(y)); }, 20.0) ==
        doctest::Approx(kGaussLaplace1).epsilon(1e-11));
  // h = 2e-4 keeps the midpoint error below 1e-8
  const Grid g = std_grid(0.5, 0.0, 20.0, 200000);
  const ScalarField f = sample(g, [](double y) { return std::exp(-y * y); });
  const ScalarField one(g.n, 1.0);
  CHECK(std::abs(weighted_inner(g, f, one, 1.0) - kGaussLaplace1) < 1e-8);
}

TEST_CASE("weighted_average examples") {
  const Grid g = std_grid();
  const ScalarField one(g.n, 1.0);
  for (double a : {1.0, 1.5}) {
    CHECK(weighted_average(g, one, a) == doctest::Approx(1.0).epsilon(1e-5));
    const ScalarField e = sample(g, [a](double y) { return std::exp(-a * std::abs(y)); });
    CHECK(weighted_average(g, e, a) == doctest::Approx(0.5).epsilon(1e-4)); // O((ah)^2)
  }
  ScalarField s(g.n);
  for (int i = 0; i < g.n; ++i) s[i] = g.sign(i);
  CHECK(std::abs(weighted_average(g, s, 1.0)) < 1e-14);
}

TEST_CASE("spatial_derivative on lines, kinks and exponentials") {
  const Grid g = std_grid();
  const ScalarField lin = sample(g, [](double y) { return y; });
  const ScalarField dl = spatial_derivative(g, lin);
  for (double d : dl) REQUIRE(d == doctest::Approx(1.0).epsilon(1e-10));
  const ScalarField ab = sample(g, [](double y) { return std::abs(y); });
  const ScalarField da = spatial_derivative(g, ab);
  for (int i = 0; i < g.n; ++i) REQUIRE(da[i] == doctest::Approx(g.sign(i)).epsilon(1e-10));

  std::vector<double> hs, errs;
  for (int n : {1000, 2000, 4000}) {
    const Grid gh = std_grid(0.5, 0.0, 20.0, n);
    const ScalarField f = sample(gh, [](double y) { return std::exp(-std::abs(y)); });
    const ScalarField df = spatial_derivative(gh, f);
    double e = 0.0;
    for (int i = 0; i < gh.n; ++i) e = std::max(e, std::abs(df[i] + gh.sign(i) * f[i]));
    hs.push_back(gh.h);
    errs.push_back(e);
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("jump_average examples") {
  const Grid g = std_grid();
  ScalarField s(g.n);
  for (int i = 0; i < g.n; ++i) s[i] = g.sign(i);
  CHECK(std::abs(jump_average(g, s)) < 1e-15);
  const ScalarField q = sample(g, [](double y) { return y * y + 3.0; });
  CHECK(jump_average(g, q) == doctest::Approx(3.0).epsilon(1e-13));
  const ScalarField de = sample(g, [](double y) { return -(y > 0 ? 1.0 : -1.0) * std::exp(-std::abs(y)); });
  CHECK(std::abs(jump_average(g, de)) < 1e-14);
  const auto [l, r] = one_sided_limits(g, de);
  CHECK(l == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("pi_project splits orthogonally") {
  const Grid g = std_grid();
  PairField eq(g.n), anti(g.n);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int i = 0; i < g.n; ++i) {
    eq.u[i] = eq.v[i] = nd(rng);
    anti.u[i] = nd(rng);
    anti.v[i] = -anti.u[i];
  }
  auto [p1, q1] = pi_project(eq);
  CHECK(p1.u == eq.u);
  CHECK(sup_norm(q1.u) == 0.0);
  auto [p2, q2] = pi_project(anti);
  CHECK(sup_norm(p2.u) < 1e-15);
  CHECK(q2.u == anti.u);

  for (int k = 0; k < 20; ++k) {
    PairField W(g.n);
    for (int i = 0; i < g.n; ++i) {
      W.u[i] = nd(rng);
      W.v[i] = nd(rng);
    }
    auto [P, Q] = pi_project(W);
    const double lhs = pair_norm2(g, W), rhs = pair_norm2(g, P) + pair_norm2(g, Q);
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * lhs);
    REQUIRE(std::abs(pair_inner(g, P, Q)) <= 1e-12 * lhs);
  }
}

TEST_CASE("pair_norms: zero, constants, quadrature") {
  const Grid g = std_grid();
  const PairField Z(g.n);
  const PairNorms z = pair_norms(g, Z, Z);
  CHECK(z.W2 == 0.0);
  CHECK(z.Wy2 == 0.0);
  CHECK(z.H1 == 0.0);

  const PairField one(ScalarField(g.n, 1.0), ScalarField(g.n, 1.0));
  CHECK(pair_norms(g, one, Z).W2 == doctest::Approx(4.0).epsilon(1e-5));

  // Continuum norms of a Gaussian pair against adaptive quadrature.
  const oracle::Bumps bu{{0.7, -0.3}, {0.4, -1.1}, {1.0, 0.6}};
  const oracle::Bumps bv{{0.2, 0.5}, {-0.8, 1.3}, {0.9, 1.4}};
  auto eta = [](double y) { return std::exp(-std::abs(y)); };
  const double W2 = oracle::integrate_sym([&](double y) { return (bu(y) * bu(y) + bv(y) * bv(y)) * eta(y); }, 20.0);
  const double Wy2 =
      oracle::integrate_sym([&](double y) { return (bu.d(y) * bu.d(y) + bv.d(y) * bv.d(y)) * eta(y); }, 20.0);
  const double IPi2 = oracle::integrate_sym(
      [&](double y) {
        const double d = 0.5 * (bu(y) - bv(y));
        return 2.0 * d * d * eta(y);
      },
      20.0);
  const Grid gf = std_grid(0.5, 0.0, 20.0, 200000);
  PairField W(gf.n);
  for (int i = 0; i < gf.n; ++i) {
    W.u[i] = bu(gf.y[i]);
    W.v[i] = bv(gf.y[i]);
  }
  const PairNorms nr = pair_norms(gf, W, spatial_derivative(gf, W));
  CHECK(std::abs(nr.W2 - W2) < 1e-8);
  CHECK(std::abs(nr.IPiW2 - IPi2) < 1e-8);
  CHECK(std::abs(nr.Wy2 - Wy2) < 1e-7);
}

TEST_CASE("PairField arithmetic and finiteness") {
  PairField a(ScalarField{1, 2}, ScalarField{3, 4});
  PairField b(ScalarField{1, 1}, ScalarField{1, 1});
  PairField c = a - b;
  CHECK(c.u == ScalarField{0, 1});
  c = 2.0 * a + b;
  CHECK(c.v == ScalarField{7, 9});
  CHECK(all_finite(c));
  c.u[0] = NAN;
  CHECK_FALSE(all_finite(c));
}

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chemokin {

// Thrown for invalid parameters, grids and configuration values.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ModelParams {
  double chi = 0.5;
  double alpha = 0.0;
  double sigma = 2.0;
  double mass = 2.0;
  double lambda = 1.0;
  // false once sigma or mass leave the normalization (sigma = 2, mass = 1/chi);
  // theory constants are then flagged as not comparable.
  bool normalized = true;

  double sqrt_alpha() const;
  double two_chi() const { return 2.0 * chi; }
};

ModelParams make_params(double chi, double alpha);
// Escape hatch: keeps the moving-frame equations but records a different sigma.
ModelParams make_params_non_normalized(double chi, double alpha, double sigma);

using ScalarField = std::vector<double>;

struct PairField {
  ScalarField u;
  ScalarField v;

  PairField() = default;
  explicit PairField(std::size_t n) : u(n, 0.0), v(n, 0.0) {}
  PairField(ScalarField uu, ScalarField vv) : u(std::move(uu)), v(std::move(vv)) {}

  std::size_t size() const { return u.size(); }
  PairField& operator+=(const PairField& o);
  PairField& operator-=(const PairField& o);
  PairField& operator*=(double c);
};

PairField operator+(PairField a, const PairField& b);
PairField operator-(PairField a, const PairField& b);
PairField operator*(double c, PairField a);

class Grid {
public:
  double L = 0.0;
  int n = 0;
  double h = 0.0;
  ModelParams params;
  std::vector<double> y;
  std::vector<double> w_eta;    // e^{-2 chi |y_i|}
  std::vector<double> w_lambda; // e^{-lambda |y_i|}

  int half() const { return n / 2; }
  double sign(int i) const { return i < n / 2 ? -1.0 : 1.0; }
  // Weight table e^{-a|y_i|}; cached tables are returned for 2 chi and lambda.
  std::vector<double> weights(double a) const;
};

Grid build_grid(const ModelParams& params, double L, int n_cells);

double weighted_inner(const Grid& g, const ScalarField& f, const ScalarField& q, double a);
double weighted_average(const Grid& g, const ScalarField& f, double a);

ScalarField spatial_derivative(const Grid& g, const ScalarField& f);
PairField spatial_derivative(const Grid& g, const PairField& W);

// Stencil of spatial_derivative at cell i: columns and coefficients (already divided by h).
struct Stencil3 {
  int col[3];
  double coef[3];
};
Stencil3 derivative_stencil(const Grid& g, int i);

// One-sided limits f(0^-) and f(0^+) by quadratic extrapolation.
std::pair<double, double> one_sided_limits(const Grid& g, const ScalarField& f);
double jump_average(const Grid& g, const ScalarField& f);

// Returns (Pi W, (I - Pi) W).
std::pair<PairField, PairField> pi_project(const PairField& W);

// Pair inner product with weight e^{-2 chi |y|}.
double pair_inner(const Grid& g, const PairField& a, const PairField& b);
double pair_norm2(const Grid& g, const PairField& a);

struct PairNorms {
  double W2 = 0, PiW2 = 0, IPiW2 = 0;
  double Wy2 = 0, PiWy2 = 0, IPiWy2 = 0;
  double H1 = 0;
};
PairNorms pair_norms(const Grid& g, const PairField& W, const PairField& Wy);

double sup_norm(const ScalarField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const PairField& W);

} // namespace chemokin

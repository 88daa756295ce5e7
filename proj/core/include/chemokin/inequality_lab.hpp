#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chemokin/core_types.hpp"

namespace chemokin {

class DiscreteOperators;

struct DiagnosticsRecord {
  double t = 0;
  double xdot = 0;
  double x = 0;
  double mass_law = 0;
  double second_law = 0;
  double third_law = 0;
  double normW2 = 0;
  double normWy2 = 0;
  double normPiWy2 = 0;
  double normIPiWy2 = 0;
  double entropyL = 0;
  double entropyLalpha = 0;
  double diss_lhs = 0;
  double diss_rhs = 0;
  double poincare_ratio = 0;
  double xdot_bound = 0;
  bool xdot_bound_valid = false;
  bool h1_ok = true;
};

using DiagnosticsSeries = std::vector<DiagnosticsRecord>;

const char* diagnostics_header();
std::string format_record(const DiagnosticsRecord& r);

// Everything except diss_lhs, which needs neighbouring records (see fill_dissipation_lhs).
DiagnosticsRecord make_record(const Grid& g, const DiscreteOperators& ops, const PairField& W,
                              double t, double x, double xdot, bool linearized, double delta,
                              double delta_alpha, bool h1_ok);

// Time derivative of (1/2)||W_y||^2 by differences along the series.
void fill_dissipation_lhs(DiagnosticsSeries& s);

// chi^2 * weighted variance / weighted Dirichlet energy, weight e^{-2 chi |y|}.
double check_poincare(const Grid& g, const ScalarField& w);

// min slack of the two interpolation inequalities with rates a >= b > 0.
double check_interpolation(const Grid& g, const ScalarField& f, double a, double b);

struct ConservationReport {
  double max_mass = 0;
  double max_second = 0;
  double max_third = 0;
  double third_at_end = 0;
  bool third_applicable = false;
};
ConservationReport check_conservation(const DiagnosticsSeries& s, bool linearized, double alpha);

struct RateFit {
  double gamma_hat = 0;
  double t0 = 0, t1 = 0;
  double r2 = 0;
  double prefactor = 0;
  int samples = 0;
};
RateFit fit_decay_rate(const std::vector<std::pair<double, double>>& series, double t0, double t1);

// Max |diss_lhs - diss_rhs| over interior records with t in [t0, t1].
double verify_dissipation_identity(const DiagnosticsSeries& s, double t0, double t1);

} // namespace chemokin

#pragma once

#include <stdexcept>

#include "chemokin/core_types.hpp"

namespace chemokin {

struct ChemoField {
  ScalarField S;  // for alpha = 0 only defined up to an additive constant
  ScalarField Sy;
  double alpha = 0.0;
  bool S_absolute = true;
};

ChemoField solve_chemo(const Grid& g, const ScalarField& rho, double alpha);

// Density of the perturbed state, rho = (1 + (u+v)/2) eta.
ScalarField density(const Grid& g, const PairField& W);

struct PeakCheck {
  bool single = false;
  double position = 0.0;
  int sign_changes = 0;
};
PeakCheck check_single_peak(const Grid& g, const ChemoField& field);

class RegimeLost : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double peak_velocity(const Grid& g, const PairField& W);
double peak_velocity_lin(const Grid& g, const PairField& W);

struct XdotBound {
  double bound = 0.0;
  bool valid = false;
  double mu = 0.0;
};
XdotBound xdot_bound(const Grid& g, const PairField& W, const PairField& Wy);

} // namespace chemokin

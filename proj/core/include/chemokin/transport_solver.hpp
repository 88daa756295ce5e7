#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemokin/core_types.hpp"
#include "chemokin/inequality_lab.hpp"

namespace chemokin {

enum class Mode { nonlinear, linearized };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct SolverState {
  PairField W;
  double t = 0.0;
  double x = 0.0;
  double xdot_last = 0.0;
  Mode mode = Mode::nonlinear;
};

struct StepConfig {
  double cfl = 0.4;
  double t_final = 10.0;
  int diag_stride = 1;
  int watchdog_stride = 50;
  // Optional frozen peak path; when set it replaces the state-dependent velocity.
  std::function<double(double)> prescribed_xdot;
  std::vector<double> snapshot_times;
  bool keep_all_snapshots = false;
  bool record_diagnostics = true;
  double delta = 0.1;       // entropy weight for L
  double delta_alpha = 0.1; // entropy weight for L_alpha
};

enum class AbortKind { speed_limit, blow_up, single_peak_lost, regime_lost };
std::string to_string(AbortKind k);

class SolverAbort : public std::runtime_error {
public:
  SolverAbort(AbortKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  AbortKind kind;
};

struct Snapshot {
  double t = 0.0;
  double x = 0.0;
  double xdot = 0.0;
  PairField W;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
};

struct AbortInfo {
  AbortKind kind;
  std::string message;
  double t = 0.0;
};

struct RunResult {
  Trajectory trajectory;
  DiagnosticsSeries series;
  SolverState final_state;
  std::optional<AbortInfo> abort;
  long steps = 0;
};

// Non-advective tendencies.
PairField rhs_nonlinear(const Grid& g, const PairField& W, double xdot);
PairField rhs_linear(const Grid& g, const PairField& W, double xdot_lin);

// First-order upwind advection: u moves right at cu, v moves left at cv, zero inflow.
PairField upwind_advection(const Grid& g, const PairField& W, double cu, double cv);

// Full semi-discrete right-hand side for a given peak velocity. The scheme is the
// first-order upwind finite-volume discretization of the density-form equations
// for g = eta * (u, v), with the steady flux subtracted so W = 0 is a fixed point.
PairField full_tendency(const Grid& g, const PairField& W, double xdot, Mode mode);

// Peak velocity that makes the discrete centering functional
// sum_i sign(y_i) e^{-sqrt(alpha)|y_i|} (g+ + g-)_i h stationary under full_tendency.
// It is the cell-edge counterpart of peak_velocity / peak_velocity_lin.
double flux_balance_velocity(const Grid& g, const PairField& W, Mode mode);

// Peak velocity used by the stepper at state W and time t.
double stepping_velocity(const Grid& g, const PairField& W, double t, Mode mode,
                         const StepConfig& cfg);

SolverState step(const Grid& g, const SolverState& s, const StepConfig& cfg, double t_stop);

// Throws SolverAbort(single_peak_lost) if the chemoattractant has more than one peak.
void h1_watchdog(const Grid& g, const PairField& W);

RunResult run(const Grid& g, const PairField& initial, Mode mode, const StepConfig& cfg);

} // namespace chemokin

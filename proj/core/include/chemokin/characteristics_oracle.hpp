#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chemokin/core_types.hpp"
#include "chemokin/transport_solver.hpp"

namespace chemokin {

// Peak velocity sampled on a uniform time grid, linear in between.
class XdotPath {
public:
  static XdotPath constant(double value, double t_end, double dt);
  static XdotPath from_function(const std::function<double(double)>& f, double t_end, double dt);
  // Resamples (t_k, xdot_k) pairs, e.g. the snapshots of a run.
  static XdotPath from_samples(const std::vector<double>& t, const std::vector<double>& xdot,
                               double dt);
  static XdotPath from_trajectory(const Trajectory& tr, double dt);

  double xdot(double t) const;
  // x(t) - x(0), exact integral of the piecewise linear velocity.
  double displacement(double t) const;
  double t_end() const { return dt_ * (static_cast<double>(v_.size()) - 1.0); }
  double sup_abs() const;

private:
  double dt_ = 1.0;
  std::vector<double> v_;
  std::vector<double> X_;
  void build_cumulative();
};

enum class OracleForm {
  nonlinear,  // speeds 1 - xdot, -(1 + xdot), as for the nonlinear equations
  linearized, // unit speeds, xdot only in the source
};

struct DuhamelOptions {
  double ds = 0.0;      // time step of the s-quadrature; 0 means the grid spacing
  double window = 0.5;
  double tol = 1e-12;
  int max_iter = 200;
  OracleForm form = OracleForm::nonlinear;
};

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DuhamelResult {
  PairField W;
  int windows = 0;
  int max_iterations = 0;
  double worst_contraction = 0.0; // largest ratio of successive Picard differences
};

DuhamelResult duhamel_solve(const Grid& g, const PairField& W0, const XdotPath& path,
                            double t_final, const DuhamelOptions& opt = {});

// <<u_y>>(t), <<v_y>>(t) from the characteristic representation, using a dense
// history (every step snapshotted) of a grid run ending at time t.
std::pair<double, double> jump_representation(const Grid& g, const Trajectory& history, double t);

} // namespace chemokin

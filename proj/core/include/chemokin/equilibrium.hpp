#pragma once

#include <cstdint>
#include <string>

#include "chemokin/core_types.hpp"

namespace chemokin {

enum class Shape { gaussian_bump, cosine_packet, random_smooth, two_bump };
enum class ConstraintMode { project_all, project_mass_only, none };

Shape parse_shape(const std::string& s);
ConstraintMode parse_constraint_mode(const std::string& s);
std::string to_string(Shape s);
std::string to_string(ConstraintMode m);

struct InitialSpec {
  Shape shape = Shape::gaussian_bump;
  double amplitude = 0.01;
  double center = 0.5;
  double width = 1.0;
  std::uint64_t seed = 1;
  ConstraintMode constraint_mode = ConstraintMode::project_all;
  // Target for <u - v>_lambda under project_all (0 is the usual centered choice).
  double diff_average = 0.0;
};

struct SteadyState {
  ScalarField eta;
};

SteadyState steady_state(const Grid& g);

// Moving-frame kernel 1 + chi sign(y) sign(v), v in {-1, +1}.
double tumbling_kernel(double chi, double y, int v);

struct Constraints {
  double mass = 0;   // <u+v>_{2 chi}
  double center = 0; // <u_y+v_y>_lambda
  double diff = 0;   // <u-v>_lambda
};
Constraints evaluate_constraints(const Grid& g, const PairField& W);

struct InitialData {
  PairField W;
  Constraints constraints;
  double sup_u = 0, sup_v = 0, sup_uy = 0, sup_vy = 0;
};

// Throws ConfigError on invalid spec or negative density, std::runtime_error if
// the constraint system is singular.
InitialData make_initial(const InitialSpec& spec, const Grid& g);

double steady_residual(const Grid& g);

} // namespace chemokin

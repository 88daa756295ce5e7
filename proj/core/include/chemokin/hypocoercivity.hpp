#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "chemokin/core_types.hpp"

namespace chemokin {

// Banded operators on a grid. Adjoints are taken in the weighted pair product
// <W1, W2> = sum (u1 u2 + v1 v2) e^{-2 chi |y_i|} h, with M = diag(e^{-2 chi |y_i|} h).
class DiscreteOperators {
public:
  using SpMat = Eigen::SparseMatrix<double>;

  const Grid& grid() const { return *grid_; }
  const SpMat& D() const { return D_; }
  // Difference matrix used by T Pi and A (no split at the origin).
  const SpMat& D_A() const { return DA_; }
  const SpMat& laplace_eta() const { return lap_; }
  const Eigen::VectorXd& mass() const { return m_; }
  // M + D_A^T M D_A, the normal-equations matrix acting on the scalar part of A.
  const SpMat& normal_matrix() const { return normal_; }

  PairField apply_T(const PairField& W) const;
  PairField apply_L(const PairField& W) const;
  PairField apply_Pi(const PairField& W) const;
  PairField apply_TPi(const PairField& W) const;
  PairField apply_TPi_adjoint(const PairField& G) const;
  // A = (I + (T Pi)^* (T Pi))^{-1} (T Pi)^*; the result has equal components.
  PairField apply_A(const PairField& Wy) const;
  // Cross-check route: zeta - Delta_eta zeta = Delta_eta (u - v), A W_y = -(zeta/2)(1,1).
  PairField apply_A_zeta(const PairField& W) const;
  ScalarField apply_laplace_eta(const ScalarField& f) const;

  friend DiscreteOperators assemble_operators(const Grid& g);

private:
  std::shared_ptr<const Grid> grid_;
  SpMat D_, DA_, lap_, normal_, zeta_mat_;
  Eigen::VectorXd m_;
  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> normal_solver_;
  std::shared_ptr<Eigen::SimplicialLDLT<SpMat>> zeta_solver_;
};

DiscreteOperators assemble_operators(const Grid& g);

double modified_entropy(const DiscreteOperators& ops, const PairField& Wy, double delta);
double modified_entropy_alpha(const DiscreteOperators& ops, const PairField& W, const PairField& Wy,
                              double delta);

// (1/2 d/dt)||W_y||^2 predicted by the nonlinear and linearized dissipation identities.
double dissipation_rhs(const Grid& g, const PairField& W, const PairField& Wy, double xdot);
double dissipation_rhs_lin(const Grid& g, const PairField& W, const PairField& Wy, double xdot_lin);

struct ConstantSet {
  double chi = 0, alpha = 0, p = 0, c = 0;
  double mu = 0;
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  double beta1 = 0, beta2 = 0;
  double delta = 0;
  double eta = 0;
  double mu0 = 0;
  double gamma_alpha0 = 0;
  double r = 0, g0 = 0;
  double lambda1 = 0, lambda2 = 0;
  double c0p = 0, c1p = 0, c2p = 0;
  double delta_alpha = 0, gamma_alpha = 0;
  bool normalized = true;
  bool p_ok_decay = false;  // p < chi / (16 (1 + chi))
  bool p_ok_entropy = false; // p <= min(1/(4 chi), chi/(8 (1 + chi)))
  bool delta_ok = false;     // 0 < delta < 1

  double g(double t) const; // 2(1+2chi) c e^{-rt} + (8 p chi^2 / r)(1 - e^{-rt})
};

ConstantSet theory_constants(const ModelParams& params, double p, double c);

} // namespace chemokin

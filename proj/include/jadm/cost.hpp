#pragma once

// The joint approximate diagonalization objective
//
//   f(U, X) = sum_l mu_l ||offdiag(W_l)||^2,   W_l = (U X)^dagger A_l (U X),
//
// on St(m, n) x SL_m, together with the gradients of both restricted functions.

#include <vector>

#include "jadm/linalg.hpp"
#include "jadm/manifolds.hpp"

namespace jadm {

/// Matrix set {A_l} (each n x n), positive weights, dagger mode and target size m <= n.
class JadmProblem {
 public:
  /// When `structured` is set, each A_l must be Hermitian (H mode) or complex
  /// symmetric (T mode) to within 1e-10 relative.
  JadmProblem(Index n, Index m, Dagger dagger, std::vector<CMat> matrices,
              std::vector<double> weights, bool structured = false);

  Index n() const noexcept { return n_; }
  Index m() const noexcept { return m_; }
  Dagger dagger() const noexcept { return dagger_; }
  bool structured() const noexcept { return structured_; }
  std::size_t size() const noexcept { return matrices_.size(); }
  const std::vector<CMat>& matrices() const noexcept { return matrices_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Same matrices and dagger, weights multiplied by c.
  JadmProblem with_scaled_weights(double c) const;

 private:
  Index n_;
  Index m_;
  Dagger dagger_;
  std::vector<CMat> matrices_;
  std::vector<double> weights_;
  bool structured_;
};

struct JointPoint {
  StiefelPoint u;
  SlPoint x;
};

/// The transformed set W_l, each m x m.
struct CongestedSet {
  std::vector<CMat> w;
};

/// y^dagger a y.
CMat congest(const CMat& a, const CMat& y, Dagger mode);

/// B_l = U^dagger A_l U.
std::vector<CMat> reduce_by_stiefel(const JadmProblem& problem, const StiefelPoint& u);

/// W_l = X^dagger B_l X for a precomputed reduction B.
CongestedSet congest_all(const std::vector<CMat>& reduced, const CMat& x, Dagger mode);

/// W_l = (U X)^dagger A_l (U X), evaluated as X^dagger (U^dagger A_l U) X.
CongestedSet transform(const JadmProblem& problem, const JointPoint& omega);

double cost(const CongestedSet& wset, const std::vector<double>& weights);
double cost(const JadmProblem& problem, const JointPoint& omega);

/// H: W offdiag(W)^H + W^H offdiag(W);  T: conj(W) offdiag(W)^T + W^H offdiag(W).
CMat upsilon(const CMat& w, Dagger mode);

/// Euclidean gradient of U -> f(U, X) at fixed X.
CMat egrad_u(const JadmProblem& problem, const JointPoint& omega);

/// Riemannian gradient of U -> f(U, X) on the Stiefel manifold.
StiefelTangent rgrad_u(const JadmProblem& problem, const JointPoint& omega);

/// Euclidean gradient of X -> sum mu ||offdiag(X^dagger B X)||^2, i.e. 2 X^{-H} sum mu Upsilon(W).
CMat egrad_x(const std::vector<CMat>& reduced, const std::vector<double>& weights, Dagger mode,
             const CMat& x);

/// Lambda = 2 sum mu (Upsilon(W) - trace(Upsilon(W))/m I), from an already congested set.
SlTangentCoord lambda_from_congested(const CongestedSet& wset, const std::vector<double>& weights,
                                     Dagger mode);

/// Riemannian gradient coordinates of X -> f(U, X); the gradient itself is X Lambda.
SlTangentCoord rgrad_x(const JadmProblem& problem, const JointPoint& omega);

}  // namespace jadm

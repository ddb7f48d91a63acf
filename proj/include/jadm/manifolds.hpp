#pragma once

// Points, tangent vectors, Riemannian gradients and exponential maps on the
// complex Stiefel manifold St(m, n) and the special linear group SL_m.
//
// Gradient convention throughout: the Euclidean gradient of a real function h
// of a complex matrix is dh/dRe + i dh/dIm, i.e. twice the Wirtinger
// derivative with respect to the conjugate. With it, dh(Z) = real_inner(grad, Z).

#include "jadm/linalg.hpp"

namespace jadm {

inline constexpr double kStiefelTolerance = 1e-10;
inline constexpr double kStiefelRepairLimit = 1e-6;
inline constexpr double kSlTolerance = 1e-8;
inline constexpr double kSlRepairLimit = 1e-4;

/// n x m matrix with orthonormal columns.
///
/// Construction accepts inputs with ||U^H U - I|| <= 1e-6 and snaps them to the
/// polar factor when the drift exceeds 1e-10; anything worse throws ManifoldError.
class StiefelPoint {
 public:
  explicit StiefelPoint(CMat u);

  /// First m columns of I_n.
  static StiefelPoint canonical(Index n, Index m);

  const CMat& matrix() const noexcept { return u_; }
  Index n() const noexcept { return u_.rows(); }
  Index m() const noexcept { return u_.cols(); }

  /// ||U^H U - I||_F.
  double orthonormality_error() const;

 private:
  CMat u_;
};

/// m x m matrix with unit determinant.
///
/// Drift in (1e-8, 1e-4] is repaired by scaling with det^(-1/m) (principal root);
/// larger drift throws ManifoldError.
class SlPoint {
 public:
  explicit SlPoint(CMat x);

  static SlPoint identity(Index m);

  const CMat& matrix() const noexcept { return x_; }
  Index m() const noexcept { return x_.rows(); }

  /// |det(X) - 1|.
  double det_error() const;

 private:
  CMat x_;
};

/// Tangent vector Z at a Stiefel point: sym(U^H Z) = 0.
class StiefelTangent {
 public:
  /// Validates tangency; throws ContractError if ||Proj(Z) - Z|| is above tolerance.
  StiefelTangent(StiefelPoint base, CMat z);

  static StiefelTangent zero(const StiefelPoint& base);

  const CMat& matrix() const noexcept { return z_; }
  const StiefelPoint& base() const noexcept { return base_; }
  double norm() const { return z_.norm(); }

  StiefelTangent scaled(double t) const;

 private:
  struct Unchecked {};
  StiefelTangent(StiefelPoint base, CMat z, Unchecked);

  StiefelPoint base_;
  CMat z_;

  friend StiefelTangent stiefel_project(const StiefelPoint& u, const CMat& xi);
};

/// Left-translated tangent coordinates Omega of the SL tangent vector X Omega; trace(Omega) = 0.
class SlTangentCoord {
 public:
  explicit SlTangentCoord(CMat omega);

  /// omega - trace(omega)/m I.
  static SlTangentCoord traceless_part(const CMat& omega);

  const CMat& matrix() const noexcept { return omega_; }
  Index m() const noexcept { return omega_.rows(); }
  double norm() const { return omega_.norm(); }

 private:
  CMat omega_;
};

/// xi - U sym(U^H xi).
StiefelTangent stiefel_project(const StiefelPoint& u, const CMat& xi);

/// Riemannian gradient for the embedded metric: the projection of the Euclidean gradient.
StiefelTangent stiefel_rgrad(const StiefelPoint& u, const CMat& egrad);

/// Geodesic Exp_U(Z) = [U, Z] exp([[U^H Z, -Z^H Z], [I, U^H Z]]) [exp(-U^H Z); 0].
StiefelPoint stiefel_exp(const StiefelPoint& u, const StiefelTangent& z);

/// Left-invariant metric <X xi, X eta>_X = Re trace(xi^H eta) in coordinates.
double sl_metric(const SlPoint& x, const SlTangentCoord& xi, const SlTangentCoord& eta);

/// Lambda(X) = X^H grad g - trace(X^H grad g)/m I. The Riemannian gradient is X Lambda.
SlTangentCoord lambda_of(const SlPoint& x, const CMat& egrad);

/// Exp_X(X Omega) = X exp(conj(Omega)) exp(Omega - conj(Omega)).
SlPoint sl_exp(const SlPoint& x, const SlTangentCoord& omega);

}  // namespace jadm

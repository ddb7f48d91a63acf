#pragma once

// Elementary 2x2 rotations in SL_2 embedded at an index pair, the derivative
// vectors of the elementary functions nu(Psi) = g(X E_ij(Psi)), and the
// closed-form minimizers of those functions for the JADM cost.

#include <vector>

#include <Eigen/Dense>

#include "jadm/cost.hpp"
#include "jadm/linalg.hpp"
#include "jadm/manifolds.hpp"

namespace jadm {

enum class RotationKind { Plane, Upper, Lower, Diagonal };

const char* to_string(RotationKind kind);

/// 0-based index pair with i < j.
struct IndexPair {
  Index i = 0;
  Index j = 1;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// All pairs i < j < m in row-cyclic (lexicographic) order.
std::vector<IndexPair> all_pairs(Index m);

using Mat2 = Eigen::Matrix2cd;

/// A 2x2 block Psi of one of the four kinds, tagged with the pair it acts on.
///
/// plane:    [[c, -s], [conj(s), c]], c real, c^2 + |s|^2 = 1
/// upper:    [[1, z], [0, 1]]
/// lower:    [[1, 0], [z, 1]]
/// diagonal: [[z, 0], [0, 1/z]], z != 0
class Rotation2 {
 public:
  /// Validates the structure of psi for the given kind; throws ContractError.
  Rotation2(RotationKind kind, const Mat2& psi, IndexPair pair);

  /// Psi(theta, phi) = [[cos t, -sin t e^{i phi}], [sin t e^{-i phi}, cos t]].
  static Rotation2 plane(double theta, double phi, IndexPair pair);
  static Rotation2 upper(Complex z, IndexPair pair);
  static Rotation2 lower(Complex z, IndexPair pair);
  static Rotation2 diagonal(Complex z, IndexPair pair);
  static Rotation2 identity(RotationKind kind, IndexPair pair);

  RotationKind kind() const noexcept { return kind_; }
  const Mat2& psi() const noexcept { return psi_; }
  IndexPair pair() const noexcept { return pair_; }

  /// ||Psi - I_2||_F.
  double distance_from_identity() const;

 private:
  RotationKind kind_;
  Mat2 psi_;
  IndexPair pair_;
};

/// [[W_ii, W_ij], [W_ji, W_jj]].
Mat2 extract_pair(const CMat& w, IndexPair pair);

/// I_m with the (i, j) principal block replaced by Psi.
CMat embed(const Rotation2& rot, Index m);

/// x <- x E_ij(Psi); only columns i and j change.
void apply_right(CMat& x, const Rotation2& rot);

/// w <- E^dagger w E; only rows and columns i, j change.
void congest_update(CMat& w, const Rotation2& rot, Dagger mode);

/// Partial derivatives at Psi = I_2 of the elementary function of the given kind,
/// read off the gradient coordinates Lambda.
///
/// plane    -> [0, -Re(L_ij - L_ji), -Im(L_ij + L_ji)]  (w.r.t. (c, s1, s2))
/// upper    -> [Re L_ij, Im L_ij]
/// lower    -> [Re L_ji, Im L_ji]
/// diagonal -> [Re(L_ii - L_jj), Im(L_ii - L_jj)]
Eigen::VectorXd elementary_derivative(const SlTangentCoord& lambda, IndexPair pair,
                                      RotationKind kind);

enum class TriangularRole { Upper, Lower };

/// Coefficients of the quadratic model nu(x, y) - nu(0, 0) = a1 x^2 + 2 a2 x + a1 y^2 + 2 a3 y
/// for z = x + i y in the upper (alpha) or lower (beta) triangular rotation.
struct TriangularCoeffs {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  TriangularRole role = TriangularRole::Upper;
};

TriangularCoeffs triangular_coeffs(const CongestedSet& wset, const std::vector<double>& weights,
                                   IndexPair pair, TriangularRole role, Dagger mode);

/// rho(z) - rho(1) = g1 (|z|^2 - 1) + g2 (1/|z|^2 - 1).
struct DiagonalCoeffs {
  double g1 = 0.0;
  double g2 = 0.0;
};

DiagonalCoeffs diagonal_coeffs(const CongestedSet& wset, const std::vector<double>& weights,
                               IndexPair pair);

/// h(theta, phi) - h(0, .) = -(r^T Gamma r - c0).
struct GammaForm {
  Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
  double c0 = 0.0;
};

/// Throws NumericalIntegrityError if c0 and Gamma(0, 0) disagree by more than 1e-8.
GammaForm build_gamma(const CongestedSet& wset, const std::vector<double>& weights,
                      IndexPair pair, Dagger mode);

/// r(theta, phi) = [cos 2t, -sin 2t cos phi, -sin 2t sin phi].
Eigen::Vector3d plane_r(double theta, double phi);

/// q(theta, phi) in its trigonometric form; equals r^T Gamma r.
double plane_q(const Eigen::Matrix3d& gamma, double theta, double phi);

/// q(theta, phi) - Gamma(0, 0) without forming q. Gamma grows with ||X||^4 while the gain
/// of a late rotation does not, so the plain difference loses every digit on
/// ill-conditioned iterates.
double plane_gain(const Eigen::Matrix3d& gamma, double theta, double phi);

/// How a minimizer arrived at its answer.
enum class MinimizerBranch {
  ClosedForm,   ///< exact minimizer of the model
  Degenerate,   ///< model is flat, identity returned
  ClampedLow,   ///< diagonal: gamma2/gamma1 < sigma, x = 1/2
  ClampedHigh,  ///< diagonal: gamma2/gamma1 > 1/sigma, x = 2
  Eigen,        ///< plane: r taken from the top eigenvector of Gamma
  Fallback,     ///< plane: phi from v = [G12, G13], best theta for that phi
};

struct RotationChoice {
  Rotation2 rotation;
  double predicted_decrease = 0.0;
  MinimizerBranch branch = MinimizerBranch::ClosedForm;
  double theta = 0.0;  ///< plane only
  double phi = 0.0;    ///< plane only
};

/// z* = -(a2 + i a3)/a1, decrease (a2^2 + a3^2)/a1; identity when a1 = 0.
RotationChoice minimize_triangular(const TriangularCoeffs& c, IndexPair pair);

/// Safeguarded diagonal minimizer with 0 < sigma_var < 1/4:
/// ratio = g2/g1 in [sigma, 1/sigma] -> x = ratio^(1/4); below -> 1/2; above (or g1 = 0) -> 2;
/// g1 = g2 = 0 -> identity. The decrease is evaluated from the model at the chosen x.
RotationChoice minimize_diagonal(const DiagonalCoeffs& c, double sigma_var, IndexPair pair);

/// Unsafeguarded minimizer of the diagonal model, ratio^(1/4) (0 if g1 = g2 = 0 is not
/// meaningful; returns 1 then and +inf when only g1 = 0).
double diagonal_model_argmin(const DiagonalCoeffs& c);

/// Plane minimizer: maximize r^T Gamma r through the top eigenvector of Gamma,
/// falling back to a 1-D maximization over theta when the eigenvector's (u2, u3)
/// is nearly orthogonal to v = (G12, G13).
RotationChoice minimize_plane(const GammaForm& g, double epsilon_inner, IndexPair pair);

/// Symmetric 3x3 eigen decomposition by cyclic Jacobi rotations.
/// Eigenvalues ascending; columns of `vectors` are the matching unit eigenvectors.
struct SymmetricEigen3 {
  Eigen::Vector3d values;
  Eigen::Matrix3d vectors;
};

SymmetricEigen3 symmetric_eigen3(const Eigen::Matrix3d& a);

}  // namespace jadm

#include "jadm/manifolds.hpp"

#include <cmath>
#include <sstream>

#include "jadm/errors.hpp"

namespace jadm {

namespace {

CMat polar_factor(const CMat& u)
{
  Eigen::SelfAdjointEigenSolver<CMat> eig(u.adjoint() * u);
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  return u * eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
}

double gram_error(const CMat& u)
{
  return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).norm();
}

}  // namespace

StiefelPoint::StiefelPoint(CMat u) : u_(std::move(u))
{
  if (u_.cols() < 1 || u_.rows() < u_.cols())
    throw DimensionError("StiefelPoint: need n >= m >= 1");
  if (!all_finite(u_)) throw ManifoldError("StiefelPoint: non-finite entries");
  const double err = gram_error(u_);
  if (err <= kStiefelTolerance) return;
  if (err > kStiefelRepairLimit) {
    std::ostringstream msg;
    msg << "StiefelPoint: ||U^H U - I|| = " << err << " exceeds repair limit";
    throw ManifoldError(msg.str());
  }
  u_ = polar_factor(u_);
}

StiefelPoint StiefelPoint::canonical(Index n, Index m)
{
  return StiefelPoint(CMat::Identity(n, m));
}

double StiefelPoint::orthonormality_error() const { return gram_error(u_); }

SlPoint::SlPoint(CMat x) : x_(std::move(x))
{
  require_square(x_, "SlPoint");
  if (!all_finite(x_)) throw ManifoldError("SlPoint: non-finite entries");
  const Complex det = x_.determinant();
  const double err = std::abs(det - 1.0);
  if (err <= kSlTolerance) return;
  if (err > kSlRepairLimit) {
    std::ostringstream msg;
    msg << "SlPoint: |det(X) - 1| = " << err << " exceeds repair limit";
    throw ManifoldError(msg.str());
  }
  x_ *= std::pow(det, -1.0 / static_cast<double>(x_.rows()));
}

SlPoint SlPoint::identity(Index m) { return SlPoint(CMat::Identity(m, m)); }

double SlPoint::det_error() const { return std::abs(x_.determinant() - 1.0); }

StiefelTangent::StiefelTangent(StiefelPoint base, CMat z, Unchecked)
    : base_(std::move(base)), z_(std::move(z))
{
}

StiefelTangent::StiefelTangent(StiefelPoint base, CMat z)
    : base_(std::move(base)), z_(std::move(z))
{
  require_same_shape(base_.matrix(), z_, "StiefelTangent");
  const double off = sym_part(base_.matrix().adjoint() * z_).norm();
  if (off > kStiefelTolerance * std::max(1.0, z_.norm()))
    throw ContractError("StiefelTangent: matrix is not tangent at the base point");
}

StiefelTangent StiefelTangent::zero(const StiefelPoint& base)
{
  return StiefelTangent(base, CMat::Zero(base.n(), base.m()), Unchecked{});
}

StiefelTangent StiefelTangent::scaled(double t) const
{
  return StiefelTangent(base_, t * z_, Unchecked{});
}

SlTangentCoord::SlTangentCoord(CMat omega) : omega_(std::move(omega))
{
  require_square(omega_, "SlTangentCoord");
  if (std::abs(omega_.trace()) > 1e-10 * std::max(1.0, omega_.norm()))
    throw ContractError("SlTangentCoord: coordinates must be traceless");
}

SlTangentCoord SlTangentCoord::traceless_part(const CMat& omega)
{
  require_square(omega, "SlTangentCoord::traceless_part");
  CMat out = omega;
  const Complex shift = omega.trace() / static_cast<double>(omega.rows());
  out.diagonal().array() -= shift;
  return SlTangentCoord(std::move(out));
}

StiefelTangent stiefel_project(const StiefelPoint& u, const CMat& xi)
{
  require_same_shape(u.matrix(), xi, "stiefel_project");
  CMat z = xi - u.matrix() * sym_part(u.matrix().adjoint() * xi);
  return StiefelTangent(u, std::move(z), StiefelTangent::Unchecked{});
}

StiefelTangent stiefel_rgrad(const StiefelPoint& u, const CMat& egrad)
{
  return stiefel_project(u, egrad);
}

StiefelPoint stiefel_exp(const StiefelPoint& u, const StiefelTangent& z)
{
  const CMat& um = u.matrix();
  const CMat& base = z.base().matrix();
  if (base.rows() != um.rows() || base.cols() != um.cols() ||
      (base - um).norm() > 1e-14 * std::max(1.0, um.norm()))
    throw ContractError("stiefel_exp: tangent vector is based at a different point");

  const Index n = u.n();
  const Index m = u.m();
  const CMat& zm = z.matrix();
  const CMat a = um.adjoint() * zm;
  const CMat s = zm.adjoint() * zm;

  CMat block(2 * m, 2 * m);
  block << a, -s, CMat::Identity(m, m), a;
  const CMat e = mat_exp(block);

  CMat uz(n, 2 * m);
  uz << um, zm;
  return StiefelPoint(uz * e.leftCols(m) * mat_exp(-a));
}

double sl_metric(const SlPoint&, const SlTangentCoord& xi, const SlTangentCoord& eta)
{
  return real_inner(xi.matrix(), eta.matrix());
}

SlTangentCoord lambda_of(const SlPoint& x, const CMat& egrad)
{
  require_same_shape(x.matrix(), egrad, "lambda_of");
  return SlTangentCoord::traceless_part(x.matrix().adjoint() * egrad);
}

SlPoint sl_exp(const SlPoint& x, const SlTangentCoord& omega)
{
  require_same_shape(x.matrix(), omega.matrix(), "sl_exp");
  const CMat conj = omega.matrix().conjugate();
  return SlPoint(x.matrix() * mat_exp(conj) * mat_exp(omega.matrix() - conj));
}

}  // namespace jadm

#include "jadm/cost.hpp"

#include <sstream>

#include "jadm/errors.hpp"

namespace jadm {

JadmProblem::JadmProblem(Index n, Index m, Dagger dagger, std::vector<CMat> matrices,
                         std::vector<double> weights, bool structured)
    : n_(n),
      m_(m),
      dagger_(dagger),
      matrices_(std::move(matrices)),
      weights_(std::move(weights)),
      structured_(structured)
{
  if (m_ < 1 || n_ < m_) throw DimensionError("JadmProblem: need 1 <= m <= n");
  if (matrices_.empty()) throw ContractError("JadmProblem: need at least one matrix");
  if (weights_.size() != matrices_.size())
    throw ContractError("JadmProblem: one weight per matrix required");
  for (std::size_t l = 0; l < matrices_.size(); ++l) {
    const CMat& a = matrices_[l];
    if (a.rows() != n_ || a.cols() != n_) {
      std::ostringstream msg;
      msg << "JadmProblem: matrix " << l << " is " << a.rows() << "x" << a.cols() << ", expected "
          << n_ << "x" << n_;
      throw DimensionError(msg.str());
    }
    if (!all_finite(a)) throw ContractError("JadmProblem: non-finite matrix entry");
    if (!(weights_[l] > 0.0)) throw ContractError("JadmProblem: weights must be positive");
    if (structured_) {
      const double asym = (a - jadm::dagger(a, dagger_)).norm();
      if (asym > 1e-10 * std::max(1.0, a.norm())) {
        std::ostringstream msg;
        msg << "JadmProblem: matrix " << l << " is not "
            << (dagger_ == Dagger::H ? "Hermitian" : "complex symmetric");
        throw ContractError(msg.str());
      }
    }
  }
}

JadmProblem JadmProblem::with_scaled_weights(double c) const
{
  std::vector<double> w = weights_;
  for (double& v : w) v *= c;
  return JadmProblem(n_, m_, dagger_, matrices_, std::move(w), structured_);
}

CMat congest(const CMat& a, const CMat& y, Dagger mode)
{
  require_square(a, "congest");
  if (a.cols() != y.rows()) throw DimensionError("congest: inner dimensions differ");
  return dagger(y, mode) * (a * y);
}

std::vector<CMat> reduce_by_stiefel(const JadmProblem& problem, const StiefelPoint& u)
{
  if (u.n() != problem.n() || u.m() != problem.m())
    throw DimensionError("reduce_by_stiefel: U shape does not match the problem");
  std::vector<CMat> out;
  out.reserve(problem.size());
  for (const CMat& a : problem.matrices()) out.push_back(congest(a, u.matrix(), problem.dagger()));
  return out;
}

CongestedSet congest_all(const std::vector<CMat>& reduced, const CMat& x, Dagger mode)
{
  CongestedSet out;
  out.w.reserve(reduced.size());
  for (const CMat& b : reduced) out.w.push_back(congest(b, x, mode));
  return out;
}

CongestedSet transform(const JadmProblem& problem, const JointPoint& omega)
{
  if (omega.x.m() != problem.m()) throw DimensionError("transform: X shape does not match");
  return congest_all(reduce_by_stiefel(problem, omega.u), omega.x.matrix(), problem.dagger());
}

double cost(const CongestedSet& wset, const std::vector<double>& weights)
{
  if (wset.w.size() != weights.size()) throw DimensionError("cost: one weight per matrix");
  double acc = 0.0;
  for (std::size_t l = 0; l < wset.w.size(); ++l) acc += weights[l] * offdiag_norm2(wset.w[l]);
  return acc;
}

double cost(const JadmProblem& problem, const JointPoint& omega)
{
  return cost(transform(problem, omega), problem.weights());
}

CMat upsilon(const CMat& w, Dagger mode)
{
  const CMat off = offdiag(w);
  if (mode == Dagger::H) return w * off.adjoint() + w.adjoint() * off;
  return w.conjugate() * off.transpose() + w.adjoint() * off;
}

CMat egrad_u(const JadmProblem& problem, const JointPoint& omega)
{
  const CMat y = omega.u.matrix() * omega.x.matrix();
  const CongestedSet wset = transform(problem, omega);
  CMat grad_y = CMat::Zero(problem.n(), problem.m());
  for (std::size_t l = 0; l < problem.size(); ++l) {
    const CMat& a = problem.matrices()[l];
    const CMat off = offdiag(wset.w[l]);
    const double mu = problem.weights()[l];
    if (problem.dagger() == Dagger::H) {
      grad_y += 2.0 * mu * (a * y * off.adjoint() + a.adjoint() * y * off);
    } else {
      const CMat yc = y.conjugate();
      grad_y += 2.0 * mu * (a.conjugate() * yc * off.transpose() + a.adjoint() * yc * off);
    }
  }
  return grad_y * omega.x.matrix().adjoint();
}

StiefelTangent rgrad_u(const JadmProblem& problem, const JointPoint& omega)
{
  return stiefel_rgrad(omega.u, egrad_u(problem, omega));
}

CMat egrad_x(const std::vector<CMat>& reduced, const std::vector<double>& weights, Dagger mode,
             const CMat& x)
{
  if (reduced.size() != weights.size()) throw DimensionError("egrad_x: one weight per matrix");
  const Index m = x.rows();
  CMat acc = CMat::Zero(m, m);
  for (std::size_t l = 0; l < reduced.size(); ++l)
    acc += weights[l] * upsilon(congest(reduced[l], x, mode), mode);
  return 2.0 * x.adjoint().partialPivLu().solve(acc);
}

SlTangentCoord lambda_from_congested(const CongestedSet& wset, const std::vector<double>& weights,
                                     Dagger mode)
{
  if (wset.w.empty() || wset.w.size() != weights.size())
    throw DimensionError("lambda_from_congested: one weight per matrix");
  const Index m = wset.w.front().rows();
  CMat acc = CMat::Zero(m, m);
  for (std::size_t l = 0; l < wset.w.size(); ++l) acc += weights[l] * upsilon(wset.w[l], mode);
  return SlTangentCoord::traceless_part(2.0 * acc);
}

SlTangentCoord rgrad_x(const JadmProblem& problem, const JointPoint& omega)
{
  return lambda_from_congested(transform(problem, omega), problem.weights(), problem.dagger());
}

}  // namespace jadm

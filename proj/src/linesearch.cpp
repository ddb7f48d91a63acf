#include "jadm/linesearch.hpp"

#include <algorithm>
#include <cmath>

#include "jadm/errors.hpp"

namespace jadm {

void LineSearchParams::validate() const {
  if (!(delta_s > 0.0 && delta_s <= 1.0)) throw ContractError("delta_s must lie in (0, 1]");
  if (!(delta_w > 0.0 && delta_w < 1.0)) throw ContractError("delta_w must lie in (0, 1)");
  if (!(tau > 0.0 && tau < 1.0)) throw ContractError("tau must lie in (0, 1)");
  if (!(t_init > 0.0)) throw ContractError("t_init must be > 0");
  if (max_backtracks < 0) throw ContractError("max_backtracks must be >= 0");
  if (!(kappa_p >= 0.0)) throw ContractError("kappa_p must be >= 0");
}

StiefelTangent search_direction(const StiefelTangent& grad) { return grad.scaled(-1.0); }

void validate_direction(const StiefelTangent& grad, const StiefelTangent& z, double delta_s) {
  const double gn = grad.norm();
  const double zn = z.norm();
  if (gn == 0.0 && zn == 0.0) return;
  const double slope = real_inner(grad.matrix(), z.matrix());
  if (!(slope <= -delta_s * gn * zn) || zn == 0.0) {
    throw ContractError("search direction is not a sufficient descent direction");
  }
}

ArmijoOutcome armijo_step(const StiefelCost& p, const StiefelPoint& u, double p_u,
                          const StiefelTangent& grad, const StiefelTangent& z,
                          const LineSearchParams& params, double t_start) {
  params.validate();
  validate_direction(grad, z, params.delta_s);
  ArmijoOutcome out{.u = u, .value = p_u};
  out.slope = real_inner(grad.matrix(), z.matrix());
  if (z.norm() == 0.0) {
    out.accepted = true;
    out.t = t_start;
    return out;
  }
  double t = std::min(t_start, params.t_init);
  for (int r = 0; r <= params.max_backtracks; ++r, t *= params.tau) {
    out.backtracks = r;
    try {
      StiefelPoint trial = stiefel_exp(u, z.scaled(t));
      const double value = p(trial);
      if (std::isfinite(value) && value <= p_u + params.delta_w * t * out.slope) {
        out.accepted = true;
        out.t = t;
        out.u = std::move(trial);
        out.value = value;
        out.shrink_ok = t * z.norm() >= params.kappa_p * grad.norm();
        return out;
      }
    } catch (const ManifoldError&) {
      // Too long a step for the exponential to stay on the manifold; shorten it.
    }
  }
  out.t = 0.0;
  return out;
}

double next_trial_step(double t_prev, const LineSearchParams& params) {
  if (!(t_prev > 0.0)) return params.t_init;
  return std::min(t_prev / params.tau, params.t_init);
}

}  // namespace jadm

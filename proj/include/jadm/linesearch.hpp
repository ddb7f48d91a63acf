#pragma once

// Backtracking line search on the Stiefel factor: direction check, Armijo
// condition along the geodesic, and a monitor for the shrinking-gradient
// condition ||t z|| >= kappa_p ||grad||.

#include <functional>

#include "jadm/manifolds.hpp"

namespace jadm {

struct LineSearchParams {
  double delta_s = 0.5;   ///< direction quality, in (0, 1]
  double delta_w = 1e-4;  ///< Armijo constant, in (0, 1)
  double tau = 0.5;       ///< backtracking factor, in (0, 1)
  double t_init = 1.0;    ///< largest trial step, > 0
  int max_backtracks = 50;
  double kappa_p = 1e-4;  ///< shrinking-gradient monitor threshold (1e-4 t_init by default)

  void validate() const;
};

/// Steepest descent: -grad.
StiefelTangent search_direction(const StiefelTangent& grad);

/// Throws ContractError unless real_inner(grad, z) <= -delta_s ||grad|| ||z||.
/// A zero gradient with a zero direction passes.
void validate_direction(const StiefelTangent& grad, const StiefelTangent& z, double delta_s);

using StiefelCost = std::function<double(const StiefelPoint&)>;

struct ArmijoOutcome {
  bool accepted = false;
  double t = 0.0;
  StiefelPoint u;      ///< the new point, or the old one when not accepted
  double value = 0.0;  ///< cost at u
  int backtracks = 0;
  double slope = 0.0;  ///< real_inner(grad, z)
  bool shrink_ok = true;
};

/// Tries t = t_start, t_start tau, ... until p(Exp_u(t z)) <= p(u) + delta_w t slope.
/// A trial whose exponential leaves the manifold tolerance counts as rejected.
/// With z = 0 the step is a no-op and is reported as accepted.
ArmijoOutcome armijo_step(const StiefelCost& p, const StiefelPoint& u, double p_u,
                          const StiefelTangent& grad, const StiefelTangent& z,
                          const LineSearchParams& params, double t_start);

/// Warm start for the next search: min(t_prev / tau, t_init).
double next_trial_step(double t_prev, const LineSearchParams& params);

}  // namespace jadm

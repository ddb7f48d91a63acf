#pragma once

// Block coordinate descent on St(m, n) x SL_m: at each iteration take either
// one Armijo step on U or one gradient-selected rotation on X, whichever block
// carries at least a fraction upsilon of the full gradient norm.

#include <optional>

#include "jadm/cost.hpp"
#include "jadm/jacobi.hpp"
#include "jadm/linesearch.hpp"
#include "jadm/trace.hpp"

namespace jadm {

struct BcdConfig {
  double upsilon = 0.5;  ///< block threshold, in (0, sqrt(2)/2)
  RotationFamily rotation;
  StopRule stop;
  LineSearchParams line_search;

  /// Defaults for the given family (GLU or GLQ) and size m.
  static BcdConfig defaults(Family family, Index m);
  void validate(Index m) const;
};

struct GradientBundle {
  StiefelTangent grad_u;
  SlTangentCoord lambda;
  double norm_u = 0.0;
  double norm_x = 0.0;
  /// sqrt(norm_u^2 + norm_x^2).
  double norm = 0.0;
};

GradientBundle block_gradients(const JadmProblem& problem, const JointPoint& omega);

/// The block with the larger gradient norm (1 on ties); empty when both are zero.
std::optional<int> select_block(double norm_u, double norm_x);
std::optional<int> select_block(const GradientBundle& bundle);

/// Runs until ||grad f|| <= grad tolerance, the iteration limit, failure of both blocks
/// in the same iteration (stalled), or ||U|| + ||X|| above the norm cap (diverged).
RunResult run_bcd(const JadmProblem& problem, const JointPoint& omega0, const BcdConfig& config);

}  // namespace jadm

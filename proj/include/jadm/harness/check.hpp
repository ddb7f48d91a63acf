#pragma once

// Oracle suite run at a single point: every analytic gradient, derivative and
// closed-form model of the library compared against finite differences and
// direct evaluation.

#include <cstdint>
#include <string>
#include <vector>

#include "jadm/cost.hpp"

namespace jadm::harness {

struct CheckOptions {
  int directions = 5;
  double step = 1e-5;
  double fd_tolerance = 1e-5;
  /// Denominator floor for finite-difference relative errors, times (1 + f).
  double fd_floor = 1e-4;
  double model_tolerance = 1e-9;
  std::uint64_t seed = 7;
};

struct CheckResult {
  std::string name;
  double error = 0.0;  ///< worst case over everything the check covers
  double tolerance = 0.0;
  bool pass = false;
  int samples = 0;
};

/// Checks, by name prefix:
///   cost.*        closed form vs explicit loops, two evaluation orders
///   grad_u.*      Euclidean and Riemannian gradient vs central differences
///   grad_x.*      Lambda vs central differences along the SL exponential
///   derivative.*  elementary derivatives vs differences along each rotation family
///   coeffs.*      derivatives of the coefficient models vs differences of the direct function
///   model.*       coefficient models vs direct evaluation at sampled parameters
///   minimizer.*   predicted decrease vs realized decrease
///   gamma.*       c0 consistency and definiteness of Gamma
///   manifold.*    orthonormality and unit determinant of the point
std::vector<CheckResult> run_oracle_suite(const JadmProblem& problem, const JointPoint& omega,
                                          const CheckOptions& options = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace jadm::harness

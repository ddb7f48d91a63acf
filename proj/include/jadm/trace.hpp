#pragma once

// Stopping rules, per-iteration records and run results shared by the
// standalone Jacobi drivers and the block coordinate descent driver.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jadm/cost.hpp"

namespace jadm {

enum class RunStatus { Converged, MaxIters, Stalled, Diverged };

const char* to_string(RunStatus status);

struct StopRule {
  /// Stop once ||grad f|| <= grad_tol. Unset means 1e-8 * (1 + f(omega_0)).
  std::optional<double> grad_tol;
  int max_iters = 5000;
  /// A run whose ||U||_F + ||X||_F exceeds this is reported as diverged.
  double norm_cap = 1e6;

  double resolve_grad_tol(double initial_cost) const;
  void validate() const;
};

/// One row of a run trace. Row 0 describes the starting point (block 0, kind "init").
///
/// The gradient columns are measured at the start of the iteration (they are what
/// drove the block choice); f and the norms are measured after the step.
struct IterationTrace {
  int iter = 0;
  int block = 0;  ///< 0 init, 1 Stiefel factor, 2 SL factor
  Index i = -1;   ///< 0-based pair, -1 when no rotation was used
  Index j = -1;
  std::string kind = "none";
  double f = 0.0;
  double grad_f1 = 0.0;
  double grad_f2 = 0.0;
  double grad_f = 0.0;
  double step_size = 0.0;  ///< Armijo t for block 1, ||Psi - I||_F for block 2
  double decrease = 0.0;   ///< f before minus f after
  double norm_u = 0.0;
  double norm_x = 0.0;
  double cond_x = 0.0;

  // Diagnostics kept in memory and in the JSON report, not in the CSV.
  double predicted_decrease = 0.0;
  double selected_derivative_norm = 0.0;
  double lambda_norm = 0.0;
  bool selection_condition_ok = true;
  bool block_condition_ok = true;
  bool shrink_ok = true;
  int backtracks = 0;
  double orthonormality_error = 0.0;
  double det_error = 0.0;
  /// sqrt(||U_k - U_{k-1}||^2 + ||X_k - X_{k-1}||^2)
  double movement = 0.0;
};

struct RunResult {
  explicit RunResult(JointPoint start) : final_point(std::move(start)) {}

  RunStatus status = RunStatus::MaxIters;
  JointPoint final_point;
  std::vector<IterationTrace> trace;
  double grad_tol = 0.0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  double final_grad_f1 = 0.0;
  double final_grad_f2 = 0.0;
  double final_grad_f = 0.0;
  int iterations = 0;
};

/// Spectral condition number of X.
double condition_number(const CMat& x);

/// Writes the header and one line per row; numbers use %.17g so equal runs give equal bytes.
void write_trace_csv(std::ostream& out, const std::vector<IterationTrace>& trace);

}  // namespace jadm

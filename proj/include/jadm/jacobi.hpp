#pragma once

// Rotation selection driven by the SL gradient, the cached X block used by
// both the standalone Jacobi solvers and block coordinate descent, and the
// standalone Jacobi-G / cyclic solvers with U held fixed.

#include <optional>
#include <vector>

#include "jadm/cost.hpp"
#include "jadm/rotations.hpp"
#include "jadm/trace.hpp"

namespace jadm {

/// GLU and GLQ pick the pair and kind with the largest elementary derivative;
/// CLU and CLQ visit pairs in row-cyclic order and take the best of three kinds.
enum class Family { GLU, GLQ, CLU, CLQ };

const char* to_string(Family family);
Family family_from_string(const std::string& text);

/// Kinds considered by a family: GLU/CLU {upper, lower, diagonal}, GLQ/CLQ {plane, lower, diagonal}.
std::vector<RotationKind> admissible_kinds(Family family);

/// sqrt(c / (3 m (m - 1))) with c = 2 (GLU) or 3 - sqrt(5) (GLQ): the constant for which a
/// max-norm selection provably satisfies ||d nu|| >= eps ||Lambda||. Infinite for m < 2.
double provable_epsilon_bound(Family family, Index m);

/// Upper limit on epsilon as published for the algorithm: the provable bound for GLU,
/// sqrt((3 + sqrt(5)) / (3 m (m - 1))) for GLQ.
double published_epsilon_bound(Family family, Index m);

struct RotationFamily {
  Family family = Family::GLU;
  double epsilon = 0.0;
  double sigma_var = 0.1;      ///< diagonal safeguard, in (0, 1/4)
  double epsilon_inner = 0.1;  ///< plane fallback threshold, in (0, 1]

  /// epsilon = half the provable bound for m.
  static RotationFamily defaults(Family family, Index m);
  /// Throws ContractError unless 0 < epsilon < published bound and the inner parameters are in range.
  void validate(Index m) const;
};

struct SelectionResult {
  IndexPair pair;
  RotationKind kind = RotationKind::Upper;
  double derivative_norm = 0.0;
  double lambda_norm = 0.0;
  /// derivative_norm >= epsilon * lambda_norm.
  bool meets_threshold = false;
};

/// Largest ||d nu(I_2)|| over admissible (pair, kind). Ties keep the first candidate in
/// lexicographic pair order, kinds in admissible_kinds order. Empty when Lambda = 0 or m < 2.
std::optional<SelectionResult> select_rotation(const SlTangentCoord& lambda,
                                               const RotationFamily& family);

/// Closed-form minimizer of the elementary function of `kind` at `pair` for the set W.
RotationChoice minimize_elementary(const CongestedSet& wset, const std::vector<double>& weights,
                                   Dagger mode, IndexPair pair, RotationKind kind,
                                   const RotationFamily& family);

struct RotationStep {
  SelectionResult selection;
  RotationChoice choice;
  double cost_before = 0.0;
  double cost_after = 0.0;
  /// False when rounding would have made the cost go up; the state is then unchanged.
  bool applied = false;
};

/// The X block of the problem at a fixed U: holds B = U^dagger A U, X and W = X^dagger B X.
///
/// W is updated in place after each rotation and recomputed from X every
/// `kRefreshInterval` applied rotations or after a determinant repair.
class SlBlock {
 public:
  static constexpr int kRefreshInterval = 50;

  SlBlock(const JadmProblem& problem, const StiefelPoint& u, const SlPoint& x);

  /// New U: recompute B and W.
  void set_u(const StiefelPoint& u);

  const SlPoint& x() const noexcept { return x_; }
  const CongestedSet& congested() const noexcept { return w_; }
  double cost() const noexcept { return cost_; }
  SlTangentCoord lambda() const;

  /// One rotation. Empty when Lambda = 0 (stationary). Throws NumericalIntegrityError if the
  /// realized cost rises by more than 1e-10 (1 + f).
  std::optional<RotationStep> step(const RotationFamily& family);

 private:
  void refresh();
  std::optional<SelectionResult> next_cyclic(const SlTangentCoord& lambda,
                                             const RotationFamily& family,
                                             RotationChoice& choice);

  const JadmProblem* problem_;
  std::vector<CMat> reduced_;
  SlPoint x_;
  CongestedSet w_;
  double cost_ = 0.0;
  int since_refresh_ = 0;
  std::size_t cursor_ = 0;
};

/// Jacobi-G (GLU/GLQ) or cyclic (CLU/CLQ) iteration on X with U fixed at u0; requires m = n.
/// Stops when ||Lambda|| <= grad tolerance. Trace rows report grad_f1 = 0 since U is not a variable.
RunResult run_jacobi(const JadmProblem& problem, const StiefelPoint& u0, const SlPoint& x0,
                     const RotationFamily& family, const StopRule& stop);

}  // namespace jadm

#include "jadm/jacobi.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "jadm/errors.hpp"

namespace jadm {

const char* to_string(Family family) {
  switch (family) {
    case Family::GLU:
      return "GLU";
    case Family::GLQ:
      return "GLQ";
    case Family::CLU:
      return "CLU";
    case Family::CLQ:
      return "CLQ";
  }
  return "?";
}

Family family_from_string(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t == "GLU") return Family::GLU;
  if (t == "GLQ") return Family::GLQ;
  if (t == "CLU") return Family::CLU;
  if (t == "CLQ") return Family::CLQ;
  throw ContractError("unknown rotation family '" + text + "'");
}

std::vector<RotationKind> admissible_kinds(Family family) {
  if (family == Family::GLU || family == Family::CLU) {
    return {RotationKind::Upper, RotationKind::Lower, RotationKind::Diagonal};
  }
  return {RotationKind::Plane, RotationKind::Lower, RotationKind::Diagonal};
}

namespace {

bool uses_plane(Family family) { return family == Family::GLQ || family == Family::CLQ; }

double pair_count_factor(Index m) { return 3.0 * static_cast<double>(m) * static_cast<double>(m - 1); }

}  // namespace

double provable_epsilon_bound(Family family, Index m) {
  if (m < 2) return std::numeric_limits<double>::infinity();
  const double c = uses_plane(family) ? 3.0 - std::sqrt(5.0) : 2.0;
  return std::sqrt(c / pair_count_factor(m));
}

double published_epsilon_bound(Family family, Index m) {
  if (m < 2) return std::numeric_limits<double>::infinity();
  const double c = uses_plane(family) ? 3.0 + std::sqrt(5.0) : 2.0;
  return std::sqrt(c / pair_count_factor(m));
}

RotationFamily RotationFamily::defaults(Family family, Index m) {
  RotationFamily f;
  f.family = family;
  const double bound = provable_epsilon_bound(family, m);
  f.epsilon = std::isfinite(bound) ? 0.5 * bound : 0.5;
  return f;
}

void RotationFamily::validate(Index m) const {
  if (!(epsilon > 0.0)) throw ContractError("epsilon must be > 0");
  if (!(epsilon < published_epsilon_bound(family, m))) {
    throw ContractError("epsilon must be below sqrt(c / (3 m (m - 1))) for this family");
  }
  if (!(sigma_var > 0.0 && sigma_var < 0.25)) throw ContractError("sigma_var must lie in (0, 1/4)");
  if (!(epsilon_inner > 0.0 && epsilon_inner <= 1.0)) {
    throw ContractError("epsilon_inner must lie in (0, 1]");
  }
}

std::optional<SelectionResult> select_rotation(const SlTangentCoord& lambda,
                                               const RotationFamily& family) {
  const Index m = lambda.m();
  const double lnorm = lambda.norm();
  if (m < 2 || lnorm == 0.0) return std::nullopt;
  const std::vector<RotationKind> kinds = admissible_kinds(family.family);
  SelectionResult best;
  best.lambda_norm = lnorm;
  best.derivative_norm = -1.0;
  for (const IndexPair& p : all_pairs(m)) {
    for (RotationKind k : kinds) {
      const double d = elementary_derivative(lambda, p, k).norm();
      if (d > best.derivative_norm) {
        best.derivative_norm = d;
        best.pair = p;
        best.kind = k;
      }
    }
  }
  best.meets_threshold = best.derivative_norm >= family.epsilon * lnorm;
  return best;
}

RotationChoice minimize_elementary(const CongestedSet& wset, const std::vector<double>& weights,
                                   Dagger mode, IndexPair pair, RotationKind kind,
                                   const RotationFamily& family) {
  switch (kind) {
    case RotationKind::Upper:
      return minimize_triangular(
          triangular_coeffs(wset, weights, pair, TriangularRole::Upper, mode), pair);
    case RotationKind::Lower:
      return minimize_triangular(
          triangular_coeffs(wset, weights, pair, TriangularRole::Lower, mode), pair);
    case RotationKind::Diagonal:
      return minimize_diagonal(diagonal_coeffs(wset, weights, pair), family.sigma_var, pair);
    case RotationKind::Plane:
      return minimize_plane(build_gamma(wset, weights, pair, mode), family.epsilon_inner, pair);
  }
  throw ContractError("unknown rotation kind");
}

SlBlock::SlBlock(const JadmProblem& problem, const StiefelPoint& u, const SlPoint& x)
    : problem_(&problem), x_(x)
{
  if (u.n() != problem.n() || u.m() != problem.m() || x.m() != problem.m()) {
    throw DimensionError("SlBlock: point does not match problem dimensions");
  }
  set_u(u);
}

void SlBlock::set_u(const StiefelPoint& u) {
  if (u.n() != problem_->n() || u.m() != problem_->m()) {
    throw DimensionError("SlBlock: Stiefel point does not match problem dimensions");
  }
  reduced_ = reduce_by_stiefel(*problem_, u);
  refresh();
}

void SlBlock::refresh() {
  w_ = congest_all(reduced_, x_.matrix(), problem_->dagger());
  cost_ = jadm::cost(w_, problem_->weights());
  since_refresh_ = 0;
}

SlTangentCoord SlBlock::lambda() const {
  return lambda_from_congested(w_, problem_->weights(), problem_->dagger());
}

std::optional<SelectionResult> SlBlock::next_cyclic(const SlTangentCoord& lambda,
                                                    const RotationFamily& family,
                                                    RotationChoice& choice) {
  const std::vector<IndexPair> pairs = all_pairs(problem_->m());
  const IndexPair pair = pairs[cursor_ % pairs.size()];
  cursor_ = (cursor_ + 1) % pairs.size();
  std::optional<SelectionResult> sel;
  for (RotationKind k : admissible_kinds(family.family)) {
    RotationChoice c =
        minimize_elementary(w_, problem_->weights(), problem_->dagger(), pair, k, family);
    if (!sel || c.predicted_decrease > choice.predicted_decrease) {
      SelectionResult s;
      s.pair = pair;
      s.kind = k;
      s.derivative_norm = elementary_derivative(lambda, pair, k).norm();
      s.lambda_norm = lambda.norm();
      s.meets_threshold = s.derivative_norm >= family.epsilon * s.lambda_norm;
      sel = s;
      choice = c;
    }
  }
  return sel;
}

std::optional<RotationStep> SlBlock::step(const RotationFamily& family) {
  const Index m = problem_->m();
  const SlTangentCoord lam = lambda();
  if (m < 2 || lam.norm() == 0.0) return std::nullopt;

  RotationStep out{.selection = {},
                   .choice = {Rotation2::identity(RotationKind::Upper, {0, 1}), 0.0,
                              MinimizerBranch::Degenerate}};
  if (family.family == Family::CLU || family.family == Family::CLQ) {
    out.selection = *next_cyclic(lam, family, out.choice);
  } else {
    out.selection = *select_rotation(lam, family);
    out.choice = minimize_elementary(w_, problem_->weights(), problem_->dagger(),
                                     out.selection.pair, out.selection.kind, family);
  }
  out.cost_before = cost_;

  const SlPoint x_prev = x_;
  const CongestedSet w_prev = w_;
  const int since_prev = since_refresh_;

  CMat x_next = x_.matrix();
  apply_right(x_next, out.choice.rotation);
  SlPoint repaired(x_next);
  const bool drifted = repaired.matrix() != x_next;
  x_ = std::move(repaired);
  ++since_refresh_;
  if (drifted || since_refresh_ >= kRefreshInterval) {
    refresh();
  } else {
    for (CMat& w : w_.w) congest_update(w, out.choice.rotation, problem_->dagger());
    cost_ = jadm::cost(w_, problem_->weights());
  }

  if (!std::isfinite(cost_)) {
    throw NumericalIntegrityError("rotation produced a non-finite cost");
  }
  if (cost_ > out.cost_before) {
    if (cost_ - out.cost_before > 1e-10 * (1.0 + out.cost_before)) {
      throw NumericalIntegrityError("rotation increased the cost beyond rounding");
    }
    x_ = x_prev;
    w_ = w_prev;
    cost_ = out.cost_before;
    since_refresh_ = since_prev;
    out.cost_after = cost_;
    out.applied = false;
    return out;
  }
  out.cost_after = cost_;
  out.applied = true;
  return out;
}

namespace {

IterationTrace point_row(const StiefelPoint& u, const SlPoint& x, double f) {
  IterationTrace r;
  r.f = f;
  r.norm_u = u.matrix().norm();
  r.norm_x = x.matrix().norm();
  r.cond_x = condition_number(x.matrix());
  r.orthonormality_error = u.orthonormality_error();
  r.det_error = x.det_error();
  return r;
}

}  // namespace

RunResult run_jacobi(const JadmProblem& problem, const StiefelPoint& u0, const SlPoint& x0,
                     const RotationFamily& family, const StopRule& stop) {
  if (problem.m() != problem.n()) {
    throw ContractError("standalone Jacobi solvers require m = n");
  }
  stop.validate();
  family.validate(problem.m());

  SlBlock block(problem, u0, x0);
  RunResult result(JointPoint{u0, x0});
  result.initial_cost = block.cost();
  result.grad_tol = stop.resolve_grad_tol(result.initial_cost);

  IterationTrace init = point_row(u0, block.x(), block.cost());
  init.kind = "init";
  init.grad_f2 = init.grad_f = block.lambda().norm();
  result.trace.push_back(init);

  const std::size_t npairs = all_pairs(problem.m()).size();
  std::size_t idle = 0;
  for (int k = 1; k <= stop.max_iters; ++k) {
    const double gnorm = block.lambda().norm();
    if (gnorm <= result.grad_tol) break;
    const CMat x_prev = block.x().matrix();
    std::optional<RotationStep> st = block.step(family);
    if (!st) break;

    IterationTrace row = point_row(u0, block.x(), block.cost());
    row.iter = k;
    row.block = 2;
    row.i = st->selection.pair.i;
    row.j = st->selection.pair.j;
    row.kind = to_string(st->selection.kind);
    row.grad_f2 = row.grad_f = gnorm;
    row.step_size = st->applied ? st->choice.rotation.distance_from_identity() : 0.0;
    row.decrease = st->cost_before - st->cost_after;
    row.predicted_decrease = st->applied ? st->choice.predicted_decrease : 0.0;
    row.selected_derivative_norm = st->selection.derivative_norm;
    row.lambda_norm = st->selection.lambda_norm;
    row.selection_condition_ok = st->selection.meets_threshold;
    row.movement = (block.x().matrix() - x_prev).norm();
    result.trace.push_back(row);
    result.iterations = k;

    if (row.norm_u + row.norm_x > stop.norm_cap) {
      result.status = RunStatus::Diverged;
      break;
    }
    if (!st->applied) {
      const bool cyclic = family.family == Family::CLU || family.family == Family::CLQ;
      if (!cyclic || ++idle >= npairs) {
        result.status = RunStatus::Stalled;
        break;
      }
    } else {
      idle = 0;
    }
  }

  result.final_point = JointPoint{u0, block.x()};
  result.final_cost = block.cost();
  result.final_grad_f2 = result.final_grad_f = block.lambda().norm();
  if (result.final_grad_f <= result.grad_tol) result.status = RunStatus::Converged;
  return result;
}

}  // namespace jadm

#include "jadm/bcd.hpp"

#include <cmath>

#include "jadm/errors.hpp"

namespace jadm {

BcdConfig BcdConfig::defaults(Family family, Index m) {
  BcdConfig c;
  c.rotation = RotationFamily::defaults(family, m);
  return c;
}

void BcdConfig::validate(Index m) const {
  if (!(upsilon > 0.0 && upsilon < std::sqrt(2.0) / 2.0)) {
    throw ContractError("upsilon must lie in (0, sqrt(2)/2)");
  }
  if (rotation.family != Family::GLU && rotation.family != Family::GLQ) {
    throw ContractError("block coordinate descent uses the GLU or GLQ rotation family");
  }
  rotation.validate(m);
  stop.validate();
  line_search.validate();
}

GradientBundle block_gradients(const JadmProblem& problem, const JointPoint& omega) {
  GradientBundle b{rgrad_u(problem, omega), rgrad_x(problem, omega)};
  b.norm_u = b.grad_u.norm();
  b.norm_x = b.lambda.norm();
  b.norm = std::hypot(b.norm_u, b.norm_x);
  return b;
}

std::optional<int> select_block(double norm_u, double norm_x) {
  if (norm_u == 0.0 && norm_x == 0.0) return std::nullopt;
  return norm_u >= norm_x ? 1 : 2;
}

std::optional<int> select_block(const GradientBundle& bundle) {
  return select_block(bundle.norm_u, bundle.norm_x);
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

RunResult run_bcd(const JadmProblem& problem, const JointPoint& omega0, const BcdConfig& config) {
  config.validate(problem.m());
  if (omega0.u.n() != problem.n() || omega0.u.m() != problem.m() ||
      omega0.x.m() != problem.m()) {
    throw DimensionError("starting point does not match problem dimensions");
  }

  StiefelPoint u = omega0.u;
  SlBlock xblock(problem, u, omega0.x);
  RunResult result(omega0);
  result.initial_cost = xblock.cost();
  result.grad_tol = config.stop.resolve_grad_tol(result.initial_cost);

  auto grad_u_at = [&]() { return rgrad_u(problem, JointPoint{u, xblock.x()}); };
  const StiefelCost p = [&](const StiefelPoint& trial) {
    return cost(problem, JointPoint{trial, xblock.x()});
  };

  StiefelTangent gu = grad_u_at();
  double norm_x = xblock.lambda().norm();
  IterationTrace init = point_row(u, xblock.x(), xblock.cost());
  init.kind = "init";
  init.grad_f1 = gu.norm();
  init.grad_f2 = norm_x;
  init.grad_f = std::hypot(init.grad_f1, init.grad_f2);
  result.trace.push_back(init);

  double t_prev = config.line_search.t_init;
  for (int k = 1; k <= config.stop.max_iters; ++k) {
    const double n1 = gu.norm();
    const double n2 = norm_x;
    const double total = std::hypot(n1, n2);
    if (total <= result.grad_tol) break;
    const std::optional<int> chosen = select_block(n1, n2);
    if (!chosen) break;

    IterationTrace row{};
    const CMat u_prev = u.matrix();
    const CMat x_prev = xblock.x().matrix();
    bool done = false;
    const int order[2] = {*chosen, *chosen == 1 ? 2 : 1};
    for (int b : order) {
      if (b == 1) {
        if (n1 == 0.0) continue;
        const double before = xblock.cost();
        const ArmijoOutcome ls = armijo_step(p, u, before, gu, search_direction(gu),
                                             config.line_search, t_prev);
        if (!ls.accepted) continue;
        u = ls.u;
        xblock.set_u(u);
        t_prev = next_trial_step(ls.t, config.line_search);
        if (xblock.cost() > before) {
          throw NumericalIntegrityError("accepted line-search step increased the cost");
        }
        row = point_row(u, xblock.x(), xblock.cost());
        row.block = 1;
        row.step_size = ls.t;
        row.decrease = before - xblock.cost();
        row.shrink_ok = ls.shrink_ok;
        row.backtracks = ls.backtracks;
        done = true;
      } else {
        const std::optional<RotationStep> st = xblock.step(config.rotation);
        if (!st || !st->applied) continue;
        row = point_row(u, xblock.x(), xblock.cost());
        row.block = 2;
        row.i = st->selection.pair.i;
        row.j = st->selection.pair.j;
        row.kind = to_string(st->selection.kind);
        row.step_size = st->choice.rotation.distance_from_identity();
        row.decrease = st->cost_before - st->cost_after;
        row.predicted_decrease = st->choice.predicted_decrease;
        row.selected_derivative_norm = st->selection.derivative_norm;
        row.lambda_norm = st->selection.lambda_norm;
        row.selection_condition_ok = st->selection.meets_threshold;
        done = true;
      }
      if (done) break;
    }
    if (!done) {
      result.status = RunStatus::Stalled;
      break;
    }
    row.iter = k;
    row.grad_f1 = n1;
    row.grad_f2 = n2;
    row.grad_f = total;
    row.block_condition_ok = (row.block == 1 ? n1 : n2) >= config.upsilon * total;
    row.movement = std::hypot((u.matrix() - u_prev).norm(), (xblock.x().matrix() - x_prev).norm());
    result.trace.push_back(row);
    result.iterations = k;

    gu = grad_u_at();
    norm_x = xblock.lambda().norm();
    if (row.norm_u + row.norm_x > config.stop.norm_cap) {
      result.status = RunStatus::Diverged;
      break;
    }
  }

  result.final_point = JointPoint{u, xblock.x()};
  result.final_cost = xblock.cost();
  result.final_grad_f1 = gu.norm();
  result.final_grad_f2 = norm_x;
  result.final_grad_f = std::hypot(result.final_grad_f1, result.final_grad_f2);
  if (result.final_grad_f <= result.grad_tol) result.status = RunStatus::Converged;
  return result;
}

}  // namespace jadm

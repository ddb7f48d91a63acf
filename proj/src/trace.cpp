#include "jadm/trace.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "jadm/errors.hpp"

namespace jadm {

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return "converged";
    case RunStatus::MaxIters:
      return "max_iters";
    case RunStatus::Stalled:
      return "stalled";
    case RunStatus::Diverged:
      return "diverged";
  }
  return "?";
}

double StopRule::resolve_grad_tol(double initial_cost) const {
  return grad_tol.value_or(1e-8 * (1.0 + initial_cost));
}

void StopRule::validate() const {
  if (grad_tol && !(*grad_tol >= 0.0)) throw ContractError("grad_tol must be >= 0");
  if (max_iters < 0) throw ContractError("max_iters must be >= 0");
  if (!(norm_cap > 0.0)) throw ContractError("norm_cap must be > 0");
}

double condition_number(const CMat& x) {
  Eigen::JacobiSVD<CMat> svd(x);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

namespace {

void put_number(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<IterationTrace>& trace) {
  out << "iter,block,i,j,kind,f,grad_f1,grad_f2,grad_f,step_size,decrease,norm_U,norm_X,cond_X\n";
  for (const IterationTrace& r : trace) {
    out << r.iter << ',' << r.block << ',' << r.i << ',' << r.j << ',' << r.kind;
    for (double v : {r.f, r.grad_f1, r.grad_f2, r.grad_f, r.step_size, r.decrease, r.norm_u,
                     r.norm_x, r.cond_x}) {
      out << ',';
      put_number(out, v);
    }
    out << '\n';
  }
}

}  // namespace jadm

#include "jadm/harness/oracles.hpp"

#include "jadm/errors.hpp"

namespace jadm::harness {

double bruteforce_cost(const JadmProblem& problem, const CMat& u, const CMat& x) {
  const Index n = problem.n();
  const Index m = problem.m();
  if (u.rows() != n || u.cols() != m || x.rows() != m || x.cols() != m) {
    throw DimensionError("bruteforce_cost: point does not match problem");
  }
  std::vector<std::vector<Complex>> y(n, std::vector<Complex>(m));
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < m; ++c) {
      Complex s = 0.0;
      for (Index k = 0; k < m; ++k) s += u(r, k) * x(k, c);
      y[r][c] = s;
    }
  }
  const bool herm = problem.dagger() == Dagger::H;
  double total = 0.0;
  for (std::size_t l = 0; l < problem.size(); ++l) {
    const CMat& a = problem.matrices()[l];
    double off = 0.0;
    for (Index p = 0; p < m; ++p) {
      for (Index q = 0; q < m; ++q) {
        if (p == q) continue;
        Complex w = 0.0;
        for (Index r = 0; r < n; ++r) {
          const Complex left = herm ? std::conj(y[r][p]) : y[r][p];
          for (Index s = 0; s < n; ++s) w += left * a(r, s) * y[s][q];
        }
        off += std::norm(w);
      }
    }
    total += problem.weights()[l] * off;
  }
  return total;
}

}  // namespace jadm::harness

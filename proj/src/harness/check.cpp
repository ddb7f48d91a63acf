#include "jadm/harness/check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jadm/harness/instance.hpp"
#include "jadm/harness/oracles.hpp"
#include "jadm/jacobi.hpp"
#include "jadm/rotations.hpp"

namespace jadm::harness {

namespace {

class Collector {
 public:
  void add(const std::string& name, double error, double tolerance) {
    auto it = std::find_if(results_.begin(), results_.end(),
                           [&](const CheckResult& r) { return r.name == name; });
    if (it == results_.end()) {
      results_.push_back({name, 0.0, tolerance, true, 0});
      it = results_.end() - 1;
    }
    // NaN must fail, so compare with the negated form.
    if (!(error <= it->error)) it->error = error;
    it->samples += 1;
    it->pass = it->pass && error <= tolerance;
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

Mat2 block_upper(double x, double y) {
  Mat2 p;
  p << 1.0, Complex(x, y), 0.0, 1.0;
  return p;
}

Mat2 block_lower(double x, double y) {
  Mat2 p;
  p << 1.0, 0.0, Complex(x, y), 1.0;
  return p;
}

Mat2 block_diagonal(Complex z) {
  Mat2 p;
  p << z, 0.0, 0.0, 1.0 / z;
  return p;
}

Mat2 block_plane(double s1, double s2) {
  const double c = std::sqrt(1.0 - s1 * s1 - s2 * s2);
  const Complex s(s1, s2);
  Mat2 p;
  p << c, -s, std::conj(s), c;
  return p;
}

Mat2 block_plane_angles(double theta, double phi) {
  const Complex s = std::sin(theta) * std::polar(1.0, phi);
  Mat2 p;
  p << std::cos(theta), -s, std::conj(s), std::cos(theta);
  return p;
}

/// Cost of the set {E^dagger W E} with E = I except for the (i, j) block.
double elementary_value(const CongestedSet& wset, const std::vector<double>& weights,
                        Dagger mode, IndexPair pair, const Mat2& psi) {
  const Index m = wset.w.front().rows();
  CMat e = CMat::Identity(m, m);
  e(pair.i, pair.i) = psi(0, 0);
  e(pair.i, pair.j) = psi(0, 1);
  e(pair.j, pair.i) = psi(1, 0);
  e(pair.j, pair.j) = psi(1, 1);
  double total = 0.0;
  for (std::size_t l = 0; l < wset.w.size(); ++l) {
    total += weights[l] * offdiag_norm2(congest(wset.w[l], e, mode));
  }
  return total;
}

CMat random_traceless(Index m, Rng& rng) {
  CMat g = rng.cmat(m, m);
  g -= (g.trace() / static_cast<double>(m)) * CMat::Identity(m, m);
  return g;
}

}  // namespace

std::vector<CheckResult> run_oracle_suite(const JadmProblem& problem, const JointPoint& omega,
                                          const CheckOptions& options) {
  Collector out;
  Rng rng(options.seed, Stream::Check);
  const Dagger mode = problem.dagger();
  const auto& weights = problem.weights();
  const Index m = problem.m();
  const double h = options.step;

  const CongestedSet wset = transform(problem, omega);
  const double f = cost(wset, weights);
  const double fd_floor = options.fd_floor * (1.0 + f);
  auto fd_error = [&](double analytic, double numeric) {
    return relative_error(analytic, numeric, fd_floor);
  };

  // cost
  {
    const double brute = bruteforce_cost(problem, omega.u.matrix(), omega.x.matrix());
    out.add("cost.bruteforce", relative_error(f, brute, 1e-300 + 1e-14 * (1.0 + f)), 1e-10);
    const CMat y = omega.u.matrix() * omega.x.matrix();
    double direct = 0.0;
    for (std::size_t l = 0; l < problem.size(); ++l) {
      direct += weights[l] * offdiag_norm2(congest(problem.matrices()[l], y, mode));
    }
    out.add("cost.product_order", relative_error(f, direct, 1e-14 * (1.0 + f)), 1e-10);
  }

  // gradients of the two blocks
  const CMat eg = egrad_u(problem, omega);
  const StiefelTangent rg = rgrad_u(problem, omega);
  const SlTangentCoord lam = rgrad_x(problem, omega);
  for (int d = 0; d < options.directions; ++d) {
    const CMat e = rng.cmat(problem.n(), m);
    const double numeric_e = central_difference(
        [&](double t) {
          return bruteforce_cost(problem, omega.u.matrix() + t * e, omega.x.matrix());
        },
        h);
    out.add("grad_u.euclidean", fd_error(real_inner(eg, e), numeric_e), options.fd_tolerance);

    const StiefelTangent z = stiefel_project(omega.u, e);
    const double numeric_r = central_difference(
        [&](double t) { return cost(problem, JointPoint{stiefel_exp(omega.u, z.scaled(t)), omega.x}); },
        h);
    out.add("grad_u.riemannian", fd_error(real_inner(rg.matrix(), z.matrix()), numeric_r),
            options.fd_tolerance);

    const SlTangentCoord xi(random_traceless(m, rng));
    const double numeric_x = central_difference(
        [&](double t) {
          return cost(problem, JointPoint{omega.u, sl_exp(omega.x, SlTangentCoord(t * xi.matrix()))});
        },
        h);
    out.add("grad_x.lambda", fd_error(sl_metric(omega.x, lam, xi), numeric_x),
            options.fd_tolerance);
  }

  // elementary functions
  const RotationFamily plane_family = RotationFamily::defaults(Family::GLQ, std::max<Index>(m, 2));
  const RotationFamily lu_family = RotationFamily::defaults(Family::GLU, std::max<Index>(m, 2));
  for (const IndexPair& pair : all_pairs(m)) {
    auto nu = [&](const Mat2& psi) { return elementary_value(wset, weights, mode, pair, psi); };
    const double nu0 = f;

    auto along = [&](const std::function<Mat2(double, double)>& block, int component) {
      return central_difference(
          [&](double t) { return nu(component == 0 ? block(t, 0.0) : block(0.0, t)); }, h);
    };
    auto diag_block = [](double x, double y) { return block_diagonal(Complex(1.0 + x, y)); };

    const Eigen::VectorXd du = elementary_derivative(lam, pair, RotationKind::Upper);
    const Eigen::VectorXd dl = elementary_derivative(lam, pair, RotationKind::Lower);
    const Eigen::VectorXd dd = elementary_derivative(lam, pair, RotationKind::Diagonal);
    const Eigen::VectorXd dp = elementary_derivative(lam, pair, RotationKind::Plane);
    const TriangularCoeffs ca = triangular_coeffs(wset, weights, pair, TriangularRole::Upper, mode);
    const TriangularCoeffs cb = triangular_coeffs(wset, weights, pair, TriangularRole::Lower, mode);
    const DiagonalCoeffs cg = diagonal_coeffs(wset, weights, pair);
    const GammaForm gf = build_gamma(wset, weights, pair, mode);
    const Eigen::Matrix3d& gm = gf.gamma;

    for (int c = 0; c < 2; ++c) {
      const double fu = along(block_upper, c);
      const double fl = along(block_lower, c);
      const double fdg = along(diag_block, c);
      const double fp = along(block_plane, c);
      out.add("derivative.upper", fd_error(du(c), fu), options.fd_tolerance);
      out.add("derivative.lower", fd_error(dl(c), fl), options.fd_tolerance);
      out.add("derivative.diagonal", fd_error(dd(c), fdg), options.fd_tolerance);
      out.add("derivative.plane", fd_error(dp(c + 1), fp), options.fd_tolerance);

      out.add("coeffs.upper", fd_error(2.0 * (c == 0 ? ca.a2 : ca.a3), fu), options.fd_tolerance);
      out.add("coeffs.lower", fd_error(2.0 * (c == 0 ? cb.a2 : cb.a3), fl), options.fd_tolerance);
      out.add("coeffs.diagonal", fd_error(c == 0 ? 2.0 * (cg.g1 - cg.g2) : 0.0, fdg),
              options.fd_tolerance);
      out.add("coeffs.plane", fd_error(4.0 * gm(0, c + 1), fp), options.fd_tolerance);
    }

    // models at sampled parameters
    auto model_error = [&](double direct_delta, double model_delta) {
      return std::abs(direct_delta - model_delta) / (1.0 + f + std::abs(direct_delta));
    };
    for (int s = 0; s < options.directions; ++s) {
      const double x = rng.uniform(-2.0, 2.0);
      const double y = rng.uniform(-2.0, 2.0);
      out.add("model.upper",
              model_error(nu(block_upper(x, y)) - nu0,
                          ca.a1 * (x * x + y * y) + 2.0 * ca.a2 * x + 2.0 * ca.a3 * y),
              options.model_tolerance);
      out.add("model.lower",
              model_error(nu(block_lower(x, y)) - nu0,
                          cb.a1 * (x * x + y * y) + 2.0 * cb.a2 * x + 2.0 * cb.a3 * y),
              options.model_tolerance);

      const double r = std::exp(rng.uniform(std::log(0.3), std::log(3.0)));
      const double alpha = rng.uniform(-M_PI, M_PI);
      out.add("model.diagonal",
              model_error(nu(block_diagonal(std::polar(r, alpha))) - nu0,
                          cg.g1 * (r * r - 1.0) + cg.g2 * (1.0 / (r * r) - 1.0)),
              options.model_tolerance);

      const double theta = rng.uniform(-M_PI / 4.0, M_PI / 4.0);
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      const double direct = nu(block_plane_angles(theta, phi)) - nu0;
      const Eigen::Vector3d rv = plane_r(theta, phi);
      out.add("model.plane_quadratic", model_error(direct, -(rv.dot(gm * rv) - gf.c0)),
              options.model_tolerance);
      out.add("model.plane_trig", model_error(direct, -(plane_q(gm, theta, phi) - gf.c0)),
              options.model_tolerance);
    }

    // minimizers: predicted decrease against the realized one
    const double scale = 1.0 + f;
    for (RotationKind kind : {RotationKind::Upper, RotationKind::Lower, RotationKind::Diagonal,
                              RotationKind::Plane}) {
      const RotationFamily& fam = kind == RotationKind::Plane ? plane_family : lu_family;
      const RotationChoice ch = minimize_elementary(wset, weights, mode, pair, kind, fam);
      const double realized = nu0 - nu(ch.rotation.psi());
      out.add(std::string("minimizer.") + to_string(kind),
              std::abs(realized - ch.predicted_decrease) / scale, 1e-8);
    }

    out.add("gamma.c0", std::abs(gf.c0 - gm(0, 0)) / (1.0 + std::abs(gf.c0)), 1e-8);
    const Eigen::Vector3d ev = symmetric_eigen3(gm).values;
    const double wrong_sign = mode == Dagger::H ? -ev(0) : ev(2);
    out.add("gamma.definite", std::max(0.0, wrong_sign) / (1.0 + gm.norm()), 1e-12);
  }

  out.add("manifold.orthonormality", omega.u.orthonormality_error(), 1e-10);
  out.add("manifold.determinant", omega.x.det_error(), 1e-8);
  return out.take();
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace jadm::harness

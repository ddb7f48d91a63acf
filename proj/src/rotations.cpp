#include "jadm/rotations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "jadm/errors.hpp"

namespace jadm {

namespace {

constexpr double kStructureTolerance = 1e-12;

void require_pair(IndexPair pair) {
  if (pair.i < 0 || pair.j <= pair.i) {
    throw ContractError("index pair must satisfy 0 <= i < j, got (" + std::to_string(pair.i) +
                        ", " + std::to_string(pair.j) + ")");
  }
}

void require_pair_fits(IndexPair pair, Index m) {
  require_pair(pair);
  if (pair.j >= m) {
    throw DimensionError("index pair (" + std::to_string(pair.i) + ", " +
                         std::to_string(pair.j) + ") out of range for size " +
                         std::to_string(m));
  }
}

void require_weights(const CongestedSet& wset, const std::vector<double>& weights) {
  if (wset.w.size() != weights.size()) {
    throw DimensionError("congested set and weights differ in length");
  }
}

}  // namespace

const char* to_string(RotationKind kind) {
  switch (kind) {
    case RotationKind::Plane:
      return "plane";
    case RotationKind::Upper:
      return "upper";
    case RotationKind::Lower:
      return "lower";
    case RotationKind::Diagonal:
      return "diagonal";
  }
  return "?";
}

std::vector<IndexPair> all_pairs(Index m) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

Rotation2::Rotation2(RotationKind kind, const Mat2& psi, IndexPair pair)
    : kind_(kind), psi_(psi), pair_(pair) {
  require_pair(pair);
  if (!psi.allFinite()) throw ContractError("rotation block has non-finite entries");
  const double tol = kStructureTolerance * std::max(1.0, psi.norm());
  const Complex one(1.0, 0.0);
  bool ok = true;
  switch (kind) {
    case RotationKind::Plane: {
      const Complex c = psi(0, 0);
      const Complex s = -psi(0, 1);
      ok = std::abs(c.imag()) <= tol && std::abs(psi(1, 1) - c) <= tol &&
           std::abs(psi(1, 0) - std::conj(s)) <= tol &&
           std::abs(std::norm(c) + std::norm(s) - 1.0) <= tol;
      break;
    }
    case RotationKind::Upper:
      ok = std::abs(psi(0, 0) - one) <= tol && std::abs(psi(1, 1) - one) <= tol &&
           std::abs(psi(1, 0)) <= tol;
      break;
    case RotationKind::Lower:
      ok = std::abs(psi(0, 0) - one) <= tol && std::abs(psi(1, 1) - one) <= tol &&
           std::abs(psi(0, 1)) <= tol;
      break;
    case RotationKind::Diagonal:
      ok = psi(0, 0) != Complex(0.0) && std::abs(psi(0, 1)) <= tol &&
           std::abs(psi(1, 0)) <= tol && std::abs(psi(0, 0) * psi(1, 1) - one) <= tol;
      break;
  }
  if (!ok) {
    throw ContractError(std::string("2x2 block does not have the structure of a ") +
                        to_string(kind) + " rotation");
  }
}

Rotation2 Rotation2::plane(double theta, double phi, IndexPair pair) {
  const Complex s = std::sin(theta) * std::polar(1.0, phi);
  Mat2 psi;
  psi << std::cos(theta), -s, std::conj(s), std::cos(theta);
  return Rotation2(RotationKind::Plane, psi, pair);
}

Rotation2 Rotation2::upper(Complex z, IndexPair pair) {
  Mat2 psi;
  psi << 1.0, z, 0.0, 1.0;
  return Rotation2(RotationKind::Upper, psi, pair);
}

Rotation2 Rotation2::lower(Complex z, IndexPair pair) {
  Mat2 psi;
  psi << 1.0, 0.0, z, 1.0;
  return Rotation2(RotationKind::Lower, psi, pair);
}

Rotation2 Rotation2::diagonal(Complex z, IndexPair pair) {
  if (z == Complex(0.0)) throw ContractError("diagonal rotation needs z != 0");
  Mat2 psi;
  psi << z, 0.0, 0.0, 1.0 / z;
  return Rotation2(RotationKind::Diagonal, psi, pair);
}

Rotation2 Rotation2::identity(RotationKind kind, IndexPair pair) {
  return Rotation2(kind, Mat2::Identity(), pair);
}

double Rotation2::distance_from_identity() const { return (psi_ - Mat2::Identity()).norm(); }

Mat2 extract_pair(const CMat& w, IndexPair pair) {
  require_square(w, "extract_pair");
  require_pair_fits(pair, w.rows());
  Mat2 out;
  out << w(pair.i, pair.i), w(pair.i, pair.j), w(pair.j, pair.i), w(pair.j, pair.j);
  return out;
}

CMat embed(const Rotation2& rot, Index m) {
  const IndexPair p = rot.pair();
  require_pair_fits(p, m);
  CMat e = identity(m);
  e(p.i, p.i) = rot.psi()(0, 0);
  e(p.i, p.j) = rot.psi()(0, 1);
  e(p.j, p.i) = rot.psi()(1, 0);
  e(p.j, p.j) = rot.psi()(1, 1);
  return e;
}

void apply_right(CMat& x, const Rotation2& rot) {
  const IndexPair p = rot.pair();
  require_pair_fits(p, x.cols());
  const Mat2& psi = rot.psi();
  for (Index r = 0; r < x.rows(); ++r) {
    const Complex a = x(r, p.i);
    const Complex b = x(r, p.j);
    x(r, p.i) = a * psi(0, 0) + b * psi(1, 0);
    x(r, p.j) = a * psi(0, 1) + b * psi(1, 1);
  }
}

void congest_update(CMat& w, const Rotation2& rot, Dagger mode) {
  require_square(w, "congest_update");
  apply_right(w, rot);
  const IndexPair p = rot.pair();
  Mat2 left = rot.psi();
  if (mode == Dagger::H) left = left.conjugate();
  // Rows i and j of E^dagger (W E) are combinations of rows i and j of W E
  // with the coefficients of columns i and j of Psi (conjugated for H).
  for (Index c = 0; c < w.cols(); ++c) {
    const Complex a = w(p.i, c);
    const Complex b = w(p.j, c);
    w(p.i, c) = left(0, 0) * a + left(1, 0) * b;
    w(p.j, c) = left(0, 1) * a + left(1, 1) * b;
  }
}

Eigen::VectorXd elementary_derivative(const SlTangentCoord& lambda, IndexPair pair,
                                      RotationKind kind) {
  const CMat& l = lambda.matrix();
  require_pair_fits(pair, l.rows());
  const Index i = pair.i;
  const Index j = pair.j;
  Eigen::VectorXd d;
  switch (kind) {
    case RotationKind::Plane:
      d.resize(3);
      d << 0.0, -(l(i, j) - l(j, i)).real(), -(l(i, j) + l(j, i)).imag();
      break;
    case RotationKind::Upper:
      d.resize(2);
      d << l(i, j).real(), l(i, j).imag();
      break;
    case RotationKind::Lower:
      d.resize(2);
      d << l(j, i).real(), l(j, i).imag();
      break;
    case RotationKind::Diagonal:
      d.resize(2);
      d << (l(i, i) - l(j, j)).real(), (l(i, i) - l(j, j)).imag();
      break;
  }
  return d;
}

TriangularCoeffs triangular_coeffs(const CongestedSet& wset, const std::vector<double>& weights,
                                   IndexPair pair, TriangularRole role, Dagger mode) {
  require_weights(wset, weights);
  const double rho = mode == Dagger::H ? 1.0 : -1.0;
  TriangularCoeffs c;
  c.role = role;
  for (std::size_t l = 0; l < wset.w.size(); ++l) {
    const CMat& w = wset.w[l];
    require_pair_fits(pair, w.rows());
    const double mu = weights[l];
    const Index i = pair.i;
    const Index j = pair.j;
    // Upper moves column j (by z times column i) and row j; lower the reverse.
    const Index fixed = role == TriangularRole::Upper ? j : i;
    for (Index p = 0; p < w.rows(); ++p) {
      if (p == fixed) continue;
      const Complex wip = w(i, p), wjp = w(j, p), wpi = w(p, i), wpj = w(p, j);
      const double cross = wip.real() * wjp.real() + wip.imag() * wjp.imag() +
                           wpi.real() * wpj.real() + wpi.imag() * wpj.imag();
      if (role == TriangularRole::Upper) {
        c.a1 += mu * (std::norm(wip) + std::norm(wpi));
        c.a2 += mu * cross;
        c.a3 += mu * (rho * (wip.imag() * wjp.real() - wip.real() * wjp.imag()) +
                      wpi.real() * wpj.imag() - wpi.imag() * wpj.real());
      } else {
        c.a1 += mu * (std::norm(wjp) + std::norm(wpj));
        c.a2 += mu * cross;
        c.a3 += mu * (rho * (wip.real() * wjp.imag() - wip.imag() * wjp.real()) +
                      wpi.imag() * wpj.real() - wpi.real() * wpj.imag());
      }
    }
  }
  return c;
}

DiagonalCoeffs diagonal_coeffs(const CongestedSet& wset, const std::vector<double>& weights,
                               IndexPair pair) {
  require_weights(wset, weights);
  DiagonalCoeffs c;
  for (std::size_t l = 0; l < wset.w.size(); ++l) {
    const CMat& w = wset.w[l];
    require_pair_fits(pair, w.rows());
    const double mu = weights[l];
    for (Index p = 0; p < w.rows(); ++p) {
      if (p == pair.i || p == pair.j) continue;
      c.g1 += mu * (std::norm(w(pair.i, p)) + std::norm(w(p, pair.i)));
      c.g2 += mu * (std::norm(w(pair.j, p)) + std::norm(w(p, pair.j)));
    }
  }
  return c;
}

GammaForm build_gamma(const CongestedSet& wset, const std::vector<double>& weights,
                      IndexPair pair, Dagger mode) {
  require_weights(wset, weights);
  const double rho = mode == Dagger::H ? 1.0 : -1.0;
  const Complex iu(0.0, 1.0);
  GammaForm g;
  for (std::size_t l = 0; l < wset.w.size(); ++l) {
    const CMat& w = wset.w[l];
    require_pair_fits(pair, w.rows());
    const Complex wii = w(pair.i, pair.i), wij = w(pair.i, pair.j);
    const Complex wji = w(pair.j, pair.i), wjj = w(pair.j, pair.j);
    Eigen::Vector3cd z;
    if (mode == Dagger::H) {
      z << wjj - wii, wij + wji, -iu * (wij - wji);
      g.c0 += 0.5 * weights[l] * std::norm(wjj - wii);
    } else {
      z << wij + wji, wii - wjj, iu * (wii + wjj);
      g.c0 -= 0.5 * weights[l] * std::norm(wij + wji);
    }
    g.gamma += (0.5 * rho * weights[l]) * (z * z.adjoint()).real();
  }
  g.gamma = 0.5 * (g.gamma + g.gamma.transpose()).eval();
  if (std::abs(g.c0 - g.gamma(0, 0)) > 1e-8 * std::max(1.0, std::abs(g.c0))) {
    throw NumericalIntegrityError("plane form inconsistent: c0 differs from Gamma(0, 0)");
  }
  return g;
}

Eigen::Vector3d plane_r(double theta, double phi) {
  const double s2 = std::sin(2.0 * theta);
  return {std::cos(2.0 * theta), -s2 * std::cos(phi), -s2 * std::sin(phi)};
}

double plane_q(const Eigen::Matrix3d& g, double theta, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double mixed = g(1, 1) * c * c + g(2, 2) * s * s + g(1, 2) * std::sin(2.0 * phi);
  return 0.5 * (g(0, 0) - mixed) * std::cos(4.0 * theta) -
         (g(0, 1) * c + g(0, 2) * s) * std::sin(4.0 * theta) + 0.5 * (g(0, 0) + mixed);
}

double plane_gain(const Eigen::Matrix3d& g, double theta, double phi) {
  // r = [c, s d] with d = -[cos phi, sin phi]; r^T G r - G00 = s^2 (d^T G' d - G00) + 2 c s G0. d.
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  const double d1 = -std::cos(phi);
  const double d2 = -std::sin(phi);
  const double tail = g(1, 1) * d1 * d1 + 2.0 * g(1, 2) * d1 * d2 + g(2, 2) * d2 * d2;
  return s * s * (tail - g(0, 0)) + 2.0 * c * s * (g(0, 1) * d1 + g(0, 2) * d2);
}

RotationChoice minimize_triangular(const TriangularCoeffs& c, IndexPair pair) {
  const RotationKind kind =
      c.role == TriangularRole::Upper ? RotationKind::Upper : RotationKind::Lower;
  if (!(c.a1 > 0.0)) {
    return {Rotation2::identity(kind, pair), 0.0, MinimizerBranch::Degenerate};
  }
  const Complex z = -Complex(c.a2, c.a3) / c.a1;
  Rotation2 rot = kind == RotationKind::Upper ? Rotation2::upper(z, pair)
                                              : Rotation2::lower(z, pair);
  return {rot, (c.a2 * c.a2 + c.a3 * c.a3) / c.a1, MinimizerBranch::ClosedForm};
}

double diagonal_model_argmin(const DiagonalCoeffs& c) {
  if (c.g1 == 0.0 && c.g2 == 0.0) return 1.0;
  if (c.g1 == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(c.g2 / c.g1, 0.25);
}

RotationChoice minimize_diagonal(const DiagonalCoeffs& c, double sigma_var, IndexPair pair) {
  if (!(sigma_var > 0.0 && sigma_var < 0.25)) {
    throw ContractError("diagonal safeguard must lie in (0, 1/4)");
  }
  if (c.g1 < 0.0 || c.g2 < 0.0) throw ContractError("diagonal coefficients must be >= 0");
  if (c.g1 == 0.0 && c.g2 == 0.0) {
    return {Rotation2::identity(RotationKind::Diagonal, pair), 0.0, MinimizerBranch::Degenerate};
  }
  double x;
  MinimizerBranch branch;
  if (c.g1 == 0.0) {
    x = 2.0;
    branch = MinimizerBranch::ClampedHigh;
  } else {
    const double ratio = c.g2 / c.g1;
    if (ratio < sigma_var) {
      x = 0.5;
      branch = MinimizerBranch::ClampedLow;
    } else if (ratio > 1.0 / sigma_var) {
      x = 2.0;
      branch = MinimizerBranch::ClampedHigh;
    } else {
      x = std::pow(ratio, 0.25);
      branch = MinimizerBranch::ClosedForm;
    }
  }
  const double x2 = x * x;
  const double root_gap = std::sqrt(c.g1) - std::sqrt(c.g2);
  const double decrease = branch == MinimizerBranch::ClosedForm
                              ? root_gap * root_gap
                              : -(c.g1 * (x2 - 1.0) + c.g2 * (1.0 / x2 - 1.0));
  return {Rotation2::diagonal(Complex(x, 0.0), pair), decrease, branch};
}

SymmetricEigen3 symmetric_eigen3(const Eigen::Matrix3d& input) {
  Eigen::Matrix3d a = 0.5 * (input + input.transpose());
  Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        Eigen::Matrix3d j = Eigen::Matrix3d::Identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = j.transpose() * a * j;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * j;
      }
    }
  }
  SymmetricEigen3 out;
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  for (int k = 0; k < 3; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

RotationChoice minimize_plane(const GammaForm& g, double epsilon_inner, IndexPair pair) {
  if (!(epsilon_inner > 0.0 && epsilon_inner <= 1.0)) {
    throw ContractError("plane fallback threshold must lie in (0, 1]");
  }
  const Eigen::Matrix3d& gm = g.gamma;
  const SymmetricEigen3 eig = symmetric_eigen3(gm);
  Eigen::Vector3d u = eig.vectors.col(2);
  if (u(0) < 0.0 || (u(0) == 0.0 && (u(1) < 0.0 || (u(1) == 0.0 && u(2) < 0.0)))) u = -u;

  const Eigen::Vector2d v(gm(0, 1), gm(0, 2));
  const Eigen::Vector2d w(u(1), u(2));
  double theta;
  double phi;
  MinimizerBranch branch;
  if (std::abs(v.dot(w)) >= epsilon_inner * v.norm() * w.norm()) {
    const double sin2 = w.norm();
    theta = 0.5 * std::atan2(sin2, u(0));
    phi = sin2 > 0.0 ? std::atan2(-u(2), -u(1)) : 0.0;
    branch = MinimizerBranch::Eigen;
  } else {
    phi = std::atan2(v(1), v(0));
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double a =
        0.5 * (gm(0, 0) - gm(1, 1) * c * c - gm(2, 2) * s * s - gm(1, 2) * std::sin(2.0 * phi));
    const double b = -(gm(0, 1) * c + gm(0, 2) * s);
    theta = 0.25 * std::atan2(b, a);
    branch = MinimizerBranch::Fallback;
  }
  double decrease = plane_gain(gm, theta, phi);
  if (decrease < 0.0) {
    // Rounding in the eigenvector can leave q a hair below q(0); keep the identity then.
    theta = 0.0;
    phi = 0.0;
    decrease = 0.0;
    branch = MinimizerBranch::Degenerate;
  }
  RotationChoice out{Rotation2::plane(theta, phi, pair), decrease, branch};
  out.theta = theta;
  out.phi = phi;
  return out;
}

}  // namespace jadm

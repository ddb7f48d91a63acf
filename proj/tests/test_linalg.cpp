#include <cmath>

#include <gtest/gtest.h>

#include "jadm/errors.hpp"
#include "jadm/linalg.hpp"
#include "test_util.hpp"

namespace jadm {
namespace {

using testing::mat_near;

// Truncated Taylor series, adequate for ||a|| <= 1.
CMat taylor_exp(const CMat& a, int terms = 40) {
  CMat sum = identity(a.rows());
  CMat term = identity(a.rows());
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

TEST(RealInner, IdentityGivesTrace) {
  EXPECT_DOUBLE_EQ(real_inner(identity(2), identity(2)), 2.0);
}

TEST(RealInner, OrthogonalToImaginaryMultiple) {
  auto rng = testing::rng_for(1);
  const CMat x = rng.cmat(3, 2);
  EXPECT_NEAR(real_inner(x, Complex(0, 1) * x), 0.0, 1e-14);
}

TEST(RealInner, ScalarExample) {
  CMat a(1, 1), b(1, 1);
  a << Complex(1, 1);
  b << Complex(2, -1);
  EXPECT_DOUBLE_EQ(real_inner(a, b), 1.0);
}

TEST(RealInner, MatchesRealAndImaginaryParts) {
  auto rng = testing::rng_for(2);
  const CMat x = rng.cmat(4, 3), y = rng.cmat(4, 3);
  const double expanded = (x.real().array() * y.real().array()).sum() +
                          (x.imag().array() * y.imag().array()).sum();
  EXPECT_NEAR(real_inner(x, y), expanded, 1e-13);
}

TEST(RealInner, ShapeMismatchThrows) {
  EXPECT_THROW(real_inner(identity(2), identity(3)), DimensionError);
}

TEST(Offdiag, DiagonalInputVanishes) {
  CMat d = CMat::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  EXPECT_TRUE(mat_near(offdiag(d), CMat::Zero(3, 3), 0.0));
}

TEST(Offdiag, ZeroesDiagonalOnly) {
  CMat a(2, 2), want(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  want << 0.0, 2.0, 3.0, 0.0;
  EXPECT_TRUE(mat_near(offdiag(a), want, 0.0));
}

TEST(Offdiag, NormSquared) {
  CMat a(2, 2);
  a << 0.0, Complex(1, 1), Complex(1, -1), 5.0;
  EXPECT_DOUBLE_EQ(offdiag_norm2(a), 4.0);
  EXPECT_DOUBLE_EQ(offdiag(a).squaredNorm(), offdiag_norm2(a));
}

TEST(Offdiag, RejectsNonSquare) {
  EXPECT_THROW(offdiag(CMat::Zero(2, 3)), DimensionError);
}

TEST(Dagger, ModesDiffer) {
  auto rng = testing::rng_for(3);
  const CMat y = rng.cmat(3, 2);
  EXPECT_TRUE(mat_near(dagger(y, Dagger::H), y.adjoint(), 0.0));
  EXPECT_TRUE(mat_near(dagger(y, Dagger::T), y.transpose(), 0.0));
  EXPECT_EQ(dagger_from_string(to_string(Dagger::T)), Dagger::T);
  EXPECT_THROW(dagger_from_string("X"), ContractError);
}

TEST(SymSkew, SplitIsExact) {
  auto rng = testing::rng_for(4);
  const CMat x = rng.cmat(4, 4);
  EXPECT_TRUE(mat_near(sym_part(x) + skew_part(x), x, 1e-14));
  EXPECT_TRUE(mat_near(sym_part(x), sym_part(x).adjoint(), 0.0));
  EXPECT_TRUE(mat_near(skew_part(x), -skew_part(x).adjoint(), 0.0));
}

TEST(MatExp, ZeroGivesIdentity) {
  EXPECT_TRUE(mat_near(mat_exp(CMat::Zero(4, 4)), identity(4), 1e-15));
}

TEST(MatExp, Diagonal) {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = Complex(0.3, -1.2);
  d(1, 1) = -2.5;
  CMat want = CMat::Zero(2, 2);
  want(0, 0) = std::exp(d(0, 0));
  want(1, 1) = std::exp(d(1, 1));
  EXPECT_TRUE(mat_near(mat_exp(d), want, 1e-14));
}

TEST(MatExp, RealSkewRotation) {
  for (double theta : {0.1, 1.0, 2.5, 7.0}) {
    CMat a(2, 2), want(2, 2);
    a << 0.0, theta, -theta, 0.0;
    want << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    EXPECT_TRUE(mat_near(mat_exp(a), want, 1e-13)) << "theta " << theta;
  }
}

TEST(MatExp, MatchesTaylorSeries) {
  auto rng = testing::rng_for(5);
  for (int trial = 0; trial < 10; ++trial) {
    CMat a = rng.cmat(5, 5);
    a /= a.norm();
    EXPECT_TRUE(mat_near(mat_exp(a), taylor_exp(a), 1e-13));
  }
}

TEST(MatExp, LargeNormUsesSquaring) {
  // exp(A) exp(-A) = I also for norms that need many squarings.
  auto rng = testing::rng_for(6);
  const CMat a = 0.5 * testing::hermitian(4, rng) * Complex(0, 1);  // skew-Hermitian
  const CMat e = mat_exp(10.0 * a);
  EXPECT_TRUE(mat_near(e * e.adjoint(), identity(4), 1e-11));
  EXPECT_TRUE(mat_near(mat_exp(a) * mat_exp(-a), identity(4), 1e-12));
}

TEST(MatExp, NilpotentIsExact) {
  CMat a(2, 2), want(2, 2);
  a << 0.0, Complex(2, 1), 0.0, 0.0;
  want << 1.0, Complex(2, 1), 0.0, 1.0;
  EXPECT_TRUE(mat_near(mat_exp(a), want, 1e-15));
}

TEST(MatExp, RejectsNonFinite) {
  CMat a = CMat::Zero(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(mat_exp(a), ContractError);
  EXPECT_THROW(mat_exp(CMat::Zero(2, 3)), DimensionError);
}

}  // namespace
}  // namespace jadm

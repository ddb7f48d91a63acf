#include <cmath>

#include <gtest/gtest.h>

#include "jadm/errors.hpp"
#include "jadm/harness/instance.hpp"
#include "jadm/harness/oracles.hpp"
#include "jadm/manifolds.hpp"
#include "test_util.hpp"

namespace jadm {
namespace {

using testing::mat_near;

TEST(StiefelPoint, CanonicalIsOrthonormal) {
  const StiefelPoint u = StiefelPoint::canonical(5, 3);
  EXPECT_EQ(u.n(), 5);
  EXPECT_EQ(u.m(), 3);
  EXPECT_EQ(u.orthonormality_error(), 0.0);
}

TEST(StiefelPoint, SnapsSmallDriftAndRejectsLarge) {
  CMat u = StiefelPoint::canonical(4, 2).matrix();
  u(2, 0) = 1e-8;
  EXPECT_LE(StiefelPoint(u).orthonormality_error(), 1e-12);
  u(2, 0) = 1e-2;
  EXPECT_THROW(StiefelPoint{u}, ManifoldError);
  EXPECT_THROW(StiefelPoint{CMat::Zero(2, 3)}, DimensionError);
}

TEST(SlPoint, RepairsAndRejects) {
  CMat x = identity(3);
  x(0, 0) = 1.0 + 1e-6;
  EXPECT_LE(SlPoint(x).det_error(), 1e-12);
  x(0, 0) = 1.1;
  EXPECT_THROW(SlPoint{x}, ManifoldError);
}

TEST(StiefelProject, HermitianPartIsRemoved) {
  auto rng = testing::rng_for(10);
  const StiefelPoint u = harness::random_stiefel(5, 3, rng);
  const CMat h = testing::hermitian(3, rng);
  EXPECT_LE(stiefel_project(u, u.matrix() * h).norm(), 1e-12);
}

TEST(StiefelProject, SkewPartIsKept) {
  auto rng = testing::rng_for(11);
  const StiefelPoint u = harness::random_stiefel(5, 3, rng);
  const CMat skew = skew_part(rng.cmat(3, 3));
  const CMat xi = u.matrix() * skew;
  EXPECT_TRUE(mat_near(stiefel_project(u, xi).matrix(), xi, 1e-12));
}

TEST(StiefelProject, ResidualIsOrthogonal) {
  auto rng = testing::rng_for(12);
  for (int trial = 0; trial < 10; ++trial) {
    const StiefelPoint u = harness::random_stiefel(6, 4, rng);
    const CMat xi = rng.cmat(6, 4);
    const CMat p = stiefel_project(u, xi).matrix();
    EXPECT_NEAR(real_inner(p, xi - p), 0.0, 1e-10);
    EXPECT_TRUE(mat_near(stiefel_project(u, p).matrix(), p, 1e-12));  // idempotent
  }
}

TEST(StiefelTangent, RejectsNonTangent) {
  const StiefelPoint u = StiefelPoint::canonical(3, 2);
  EXPECT_THROW(StiefelTangent(u, u.matrix()), ContractError);
}

TEST(StiefelRgrad, TrivialCases) {
  auto rng = testing::rng_for(13);
  const StiefelPoint u = harness::random_stiefel(5, 2, rng);
  EXPECT_EQ(stiefel_rgrad(u, CMat::Zero(5, 2)).norm(), 0.0);
  EXPECT_LE(stiefel_rgrad(u, u.matrix()).norm(), 1e-12);
}

TEST(StiefelRgrad, LinearFunctionDirectionalDerivative) {
  auto rng = testing::rng_for(14);
  const StiefelPoint u = harness::random_stiefel(5, 3, rng);
  const CMat c = rng.cmat(5, 3);
  const StiefelTangent grad = stiefel_rgrad(u, c);
  for (int trial = 0; trial < 20; ++trial) {
    const StiefelTangent z = stiefel_project(u, rng.cmat(5, 3));
    const double fd = harness::central_difference(
        [&](double t) { return real_inner(c, stiefel_exp(u, z.scaled(t)).matrix()); }, 1e-5);
    EXPECT_NEAR(fd, real_inner(grad.matrix(), z.matrix()), 1e-6);
  }
}

TEST(StiefelExp, ZeroStepIsIdentityMap) {
  auto rng = testing::rng_for(15);
  const StiefelPoint u = harness::random_stiefel(4, 2, rng);
  EXPECT_TRUE(mat_near(stiefel_exp(u, StiefelTangent::zero(u)).matrix(), u.matrix(), 1e-14));
}

TEST(StiefelExp, UnitCircle) {
  const double theta = 0.7;
  CMat one(1, 1), step(1, 1), want(1, 1);
  one << 1.0;
  step << Complex(0, theta);
  want << std::exp(Complex(0, theta));
  const StiefelPoint u(one);
  EXPECT_TRUE(mat_near(stiefel_exp(u, StiefelTangent(u, step)).matrix(), want, 1e-14));
}

TEST(StiefelExp, StaysOnManifold) {
  auto rng = testing::rng_for(16);
  for (int trial = 0; trial < 10; ++trial) {
    const StiefelPoint u = harness::random_stiefel(6, 3, rng);
    const StiefelTangent z = stiefel_project(u, 2.0 * rng.cmat(6, 3));
    const CMat r = stiefel_exp(u, z).matrix();
    EXPECT_LE((r.adjoint() * r - identity(3)).norm(), 1e-10);
  }
}

TEST(StiefelExp, IsAGeodesicWithInitialVelocity) {
  auto rng = testing::rng_for(17);
  const StiefelPoint u = harness::random_stiefel(5, 2, rng);
  const StiefelTangent z = stiefel_project(u, rng.cmat(5, 2));
  const double h = 1e-6;
  const CMat velocity =
      (stiefel_exp(u, z.scaled(h)).matrix() - stiefel_exp(u, z.scaled(-h)).matrix()) / (2 * h);
  EXPECT_TRUE(mat_near(velocity, z.matrix(), 1e-8));
}

TEST(StiefelExp, ForeignBaseThrows) {
  auto rng = testing::rng_for(18);
  const StiefelPoint u = harness::random_stiefel(4, 2, rng);
  const StiefelPoint v = harness::random_stiefel(4, 2, rng);
  EXPECT_THROW(stiefel_exp(u, StiefelTangent::zero(v)), ContractError);
}

TEST(SlMetric, LeftInvariantCoordinates) {
  auto rng = testing::rng_for(20);
  const SlTangentCoord a(testing::traceless(3, rng));
  const SlTangentCoord b(testing::traceless(3, rng));
  const SlPoint x1 = harness::random_sl(3, rng);
  const SlPoint x2 = harness::random_sl(3, rng);
  EXPECT_NEAR(sl_metric(x1, a, a), a.matrix().squaredNorm(), 1e-12);
  EXPECT_DOUBLE_EQ(sl_metric(x1, a, b), sl_metric(x2, a, b));
}

TEST(SlMetric, MatchesAmbientFormula) {
  auto rng = testing::rng_for(21);
  for (int trial = 0; trial < 10; ++trial) {
    const SlPoint x = harness::random_sl(4, rng);
    const SlTangentCoord a(testing::traceless(4, rng));
    const SlTangentCoord b(testing::traceless(4, rng));
    const CMat& xm = x.matrix();
    const CMat xa = xm * a.matrix(), xb = xm * b.matrix();
    const CMat gram_inv = (xm * xm.adjoint()).inverse();
    const double ambient = (xa.adjoint() * gram_inv * xb).trace().real();
    EXPECT_NEAR(sl_metric(x, a, b), ambient, 1e-9);
  }
}

TEST(Lambda, TrivialCases) {
  const SlPoint x = SlPoint::identity(3);
  EXPECT_EQ(lambda_of(x, CMat::Zero(3, 3)).norm(), 0.0);
  EXPECT_LE(lambda_of(x, identity(3)).norm(), 1e-15);
}

TEST(Lambda, LinearFunctionDirectionalDerivative) {
  auto rng = testing::rng_for(22);
  const SlPoint x = harness::random_sl(4, rng);
  const CMat c = rng.cmat(4, 4);
  const SlTangentCoord lam = lambda_of(x, c);
  EXPECT_NEAR(lam.matrix().trace().real(), 0.0, 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    const SlTangentCoord omega(testing::traceless(4, rng));
    const double fd = harness::central_difference(
        [&](double t) {
          return real_inner(c, sl_exp(x, SlTangentCoord(t * omega.matrix())).matrix());
        },
        1e-5);
    EXPECT_NEAR(fd, sl_metric(x, lam, omega), 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST(SlExp, ZeroAndRealCase) {
  auto rng = testing::rng_for(23);
  const SlPoint x = harness::random_sl(3, rng);
  EXPECT_TRUE(mat_near(sl_exp(x, SlTangentCoord(CMat::Zero(3, 3))).matrix(), x.matrix(), 1e-14));
  CMat real = rng.rmat(3, 3);
  real.diagonal().array() -= real.trace() / 3.0;
  const SlTangentCoord omega(real);
  EXPECT_TRUE(mat_near(sl_exp(x, omega).matrix(), x.matrix() * mat_exp(real), 1e-12));
}

TEST(SlExp, UnitDeterminant) {
  auto rng = testing::rng_for(24);
  for (int trial = 0; trial < 20; ++trial) {
    CMat omega = testing::traceless(4, rng);
    omega /= std::max(1.0, omega.norm());
    const SlPoint r = sl_exp(SlPoint::identity(4), SlTangentCoord(omega));
    EXPECT_LE(std::abs(r.matrix().determinant() - 1.0), 1e-8);
  }
}

TEST(SlTangentCoord, RejectsTrace) {
  EXPECT_THROW(SlTangentCoord{identity(2)}, ContractError);
  EXPECT_LE(SlTangentCoord::traceless_part(identity(2)).norm(), 1e-15);
}

}  // namespace
}  // namespace jadm

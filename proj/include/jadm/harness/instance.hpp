#pragma once

// Random test instances with a known exact joint diagonalizer, random starting
// points, and the polar factorization of a point of RSL(m, n) into (U, X).

#include <cstdint>
#include <random>
#include <vector>

#include "jadm/cost.hpp"

namespace jadm::harness {

/// Independent random streams derived from one seed, one per consumer.
enum class Stream : std::uint64_t { Mixing = 1, Spectrum = 2, Noise = 3, Start = 4, Check = 5 };

/// mt19937_64 seeded from (seed, stream) through seed_seq.
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream);

  double uniform(double lo, double hi);
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex cnormal();
  CMat cmat(Index rows, Index cols);
  /// Real standard Gaussian entries stored as complex.
  CMat rmat(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
};

struct InstanceSpec {
  Index n = 6;
  Index m = 4;
  Index matrices = 5;  ///< L
  Dagger dagger = Dagger::H;
  bool structured = true;
  double noise = 0.0;  ///< eta >= 0
  std::uint64_t seed = 1;
  double spread_low = 0.1;  ///< diagonal entries uniform on [-high, -low] U [low, high]
  double spread_high = 1.0;
  /// Real mixing matrix and real noise: with dagger T this is the real symmetric class.
  bool real = false;

  void validate() const;
};

struct Instance {
  JadmProblem problem;
  JointPoint truth;
  CMat mixing;  ///< Y in RSL(m, n) with Y^dagger A_l Y = D_l before noise
  std::vector<Eigen::VectorXd> spectra;
};

/// A_l = (Y^+)^dagger D_l Y^+ with Y rescaled to det(Y^H Y) = 1, symmetrized to the
/// structured class, plus eta times a unit-Frobenius structured Gaussian perturbation.
Instance generate_instance(const InstanceSpec& spec);

/// Y = U X with U = Y (Y^H Y)^{-1/2} and X = (Y^H Y)^{1/2}. Throws NotInRslError when
/// |det(Y^H Y) - 1| > 1e-6.
JointPoint factor_rsl(const CMat& y);

StiefelPoint random_stiefel(Index n, Index m, Rng& rng);
/// exp(scale * G) with G a traceless complex Gaussian matrix; det = 1 exactly in exact arithmetic.
SlPoint random_sl(Index m, Rng& rng, double scale = 0.3);
JointPoint random_joint_point(Index n, Index m, std::uint64_t seed);

}  // namespace jadm::harness

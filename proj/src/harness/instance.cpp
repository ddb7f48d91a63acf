#include "jadm/harness/instance.hpp"

#include <cmath>

#include "jadm/errors.hpp"

namespace jadm::harness {

Rng::Rng(std::uint64_t seed, Stream stream) {
  const auto tag = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), 0x6a61646du};
  engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

CMat Rng::cmat(Index rows, Index cols) {
  CMat a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) a(r, c) = cnormal();
  }
  return a;
}

CMat Rng::rmat(Index rows, Index cols) {
  CMat a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) a(r, c) = normal();
  }
  return a;
}

void InstanceSpec::validate() const {
  if (m < 1 || n < m) throw ContractError("instance needs 1 <= m <= n");
  if (matrices < 1) throw ContractError("instance needs at least one matrix");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw ContractError("noise must be >= 0");
  if (!(spread_low > 0.0 && spread_low <= spread_high)) {
    throw ContractError("diagonal spread needs 0 < low <= high");
  }
}

namespace {

CMat structured_part(const CMat& a, Dagger mode) {
  return 0.5 * (a + dagger(a, mode));
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng mixing_rng(spec.seed, Stream::Mixing);
  Rng spectrum_rng(spec.seed, Stream::Spectrum);
  Rng noise_rng(spec.seed, Stream::Noise);

  CMat y;
  for (int attempt = 0;; ++attempt) {
    y = spec.real ? mixing_rng.rmat(spec.n, spec.m) : mixing_rng.cmat(spec.n, spec.m);
    const Eigen::JacobiSVD<CMat> svd(y);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 1e-8 * s(0)) break;
    if (attempt == 9) throw NumericalIntegrityError("could not draw a full-rank mixing matrix");
  }
  const Complex gram_det = (y.adjoint() * y).determinant();
  y *= std::pow(gram_det.real(), -1.0 / (2.0 * static_cast<double>(spec.m)));

  const CMat gram = y.adjoint() * y;
  const CMat pinv = gram.partialPivLu().solve(CMat(y.adjoint()));
  const CMat pinv_dag = dagger(pinv, spec.dagger);

  std::vector<CMat> matrices;
  std::vector<Eigen::VectorXd> spectra;
  for (Index l = 0; l < spec.matrices; ++l) {
    Eigen::VectorXd d(spec.m);
    for (Index k = 0; k < spec.m; ++k) {
      const double mag = spectrum_rng.uniform(spec.spread_low, spec.spread_high);
      d(k) = spectrum_rng.uniform(0.0, 1.0) < 0.5 ? -mag : mag;
    }
    CMat a = pinv_dag * d.cast<Complex>().asDiagonal() * pinv;
    if (spec.structured) a = structured_part(a, spec.dagger);
    if (spec.noise > 0.0) {
      CMat e = spec.real ? noise_rng.rmat(spec.n, spec.n) : noise_rng.cmat(spec.n, spec.n);
      if (spec.structured) e = structured_part(e, spec.dagger);
      a += (spec.noise / e.norm()) * e;
    }
    matrices.push_back(std::move(a));
    spectra.push_back(std::move(d));
  }
  JadmProblem problem(spec.n, spec.m, spec.dagger, std::move(matrices),
                      std::vector<double>(static_cast<std::size_t>(spec.matrices), 1.0),
                      spec.structured);
  return Instance{std::move(problem), factor_rsl(y), y, std::move(spectra)};
}

JointPoint factor_rsl(const CMat& y) {
  if (y.cols() > y.rows() || y.cols() < 1) throw DimensionError("factor_rsl needs n >= m >= 1");
  const CMat gram = y.adjoint() * y;
  const double det = gram.determinant().real();
  if (!(std::abs(det - 1.0) <= 1e-6)) throw NotInRslError("det(Y^H Y) is not 1");
  const Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseSqrt();
  const CMat& v = eig.eigenvectors();
  const CMat p = v * root.cast<Complex>().asDiagonal() * v.adjoint();
  const CMat p_inv = v * root.cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();
  return JointPoint{StiefelPoint(y * p_inv), SlPoint(p)};
}

StiefelPoint random_stiefel(Index n, Index m, Rng& rng) {
  const CMat g = rng.cmat(n, m);
  const Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(n, m);
  return StiefelPoint(std::move(q));
}

SlPoint random_sl(Index m, Rng& rng, double scale) {
  CMat g = rng.cmat(m, m);
  g -= (g.trace() / static_cast<double>(m)) * CMat::Identity(m, m);
  return SlPoint(mat_exp(scale * g));
}

JointPoint random_joint_point(Index n, Index m, std::uint64_t seed) {
  Rng rng(seed, Stream::Start);
  StiefelPoint u = random_stiefel(n, m, rng);
  return JointPoint{std::move(u), random_sl(m, rng)};
}

}  // namespace jadm::harness

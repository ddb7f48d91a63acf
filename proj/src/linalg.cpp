#include "jadm/linalg.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "jadm/errors.hpp"

namespace jadm {

const char* to_string(Dagger mode) { return mode == Dagger::H ? "H" : "T"; }

Dagger dagger_from_string(const std::string& text)
{
  if (text == "H" || text == "h") return Dagger::H;
  if (text == "T" || text == "t") return Dagger::T;
  throw ContractError("dagger mode must be \"H\" or \"T\", got \"" + text + "\"");
}

CMat dagger(const CMat& y, Dagger mode)
{
  if (mode == Dagger::H) return y.adjoint();
  return y.transpose();
}

void require_square(const CMat& a, const char* what)
{
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

void require_same_shape(const CMat& a, const CMat& b, const char* what)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
        << "x" << b.cols();
    throw DimensionError(msg.str());
  }
}

double real_inner(const CMat& x, const CMat& y)
{
  require_same_shape(x, y, "real_inner");
  double acc = 0.0;
  for (Index k = 0; k < x.size(); ++k) {
    const Complex a = x.data()[k];
    const Complex b = y.data()[k];
    acc += a.real() * b.real() + a.imag() * b.imag();
  }
  return acc;
}

CMat offdiag(const CMat& w)
{
  require_square(w, "offdiag");
  CMat out = w;
  out.diagonal().setZero();
  return out;
}

double offdiag_norm2(const CMat& w)
{
  require_square(w, "offdiag_norm2");
  double acc = 0.0;
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = 0; j < w.cols(); ++j)
      if (i != j) acc += std::norm(w(i, j));
  return acc;
}

CMat sym_part(const CMat& x)
{
  require_square(x, "sym_part");
  return 0.5 * (x + x.adjoint());
}

CMat skew_part(const CMat& x)
{
  require_square(x, "skew_part");
  return 0.5 * (x - x.adjoint());
}

CMat identity(Index m) { return CMat::Identity(m, m); }

bool all_finite(const CMat& a)
{
  for (Index k = 0; k < a.size(); ++k)
    if (!std::isfinite(a.data()[k].real()) || !std::isfinite(a.data()[k].imag())) return false;
  return true;
}

namespace {

// Higham (2005), degree 13.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const CMat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

CMat mat_exp(const CMat& a)
{
  require_square(a, "mat_exp");
  if (!all_finite(a)) throw ContractError("mat_exp: non-finite entry");
  const Index m = a.rows();
  if (m == 0) return a;

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const CMat s = a / std::ldexp(1.0, squarings);

  const auto& b = kPade13;
  const CMat id = identity(m);
  const CMat s2 = s * s;
  const CMat s4 = s2 * s2;
  const CMat s6 = s4 * s2;

  const CMat u_inner = s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 + b[5] * s4 +
                       b[3] * s2 + b[1] * id;
  const CMat u = s * u_inner;
  const CMat v = s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) + b[6] * s6 + b[4] * s4 +
                 b[2] * s2 + b[0] * id;

  CMat r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace jadm

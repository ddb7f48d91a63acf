#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace jadm {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix, row-major.
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Which transpose a congruence uses: W = Y^H A Y (H) or W = Y^T A Y (T).
enum class Dagger { H, T };

const char* to_string(Dagger mode);
Dagger dagger_from_string(const std::string& text);

/// y^H or y^T depending on mode.
CMat dagger(const CMat& y, Dagger mode);

/// Re(trace(x^H y)): the real Euclidean inner product on C^{n x m}.
double real_inner(const CMat& x, const CMat& y);

/// Copy of w with its diagonal zeroed.
CMat offdiag(const CMat& w);

/// ||offdiag(w)||^2 without forming the copy.
double offdiag_norm2(const CMat& w);

/// (x + x^H) / 2 and (x - x^H) / 2.
CMat sym_part(const CMat& x);
CMat skew_part(const CMat& x);

/// Matrix exponential, scaling and squaring with a degree-13 Pade approximant.
CMat mat_exp(const CMat& a);

CMat identity(Index m);
bool all_finite(const CMat& a);

void require_square(const CMat& a, const char* what);
void require_same_shape(const CMat& a, const CMat& b, const char* what);

}  // namespace jadm

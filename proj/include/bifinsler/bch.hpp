#pragma once

// Truncated Baker-Campbell-Hausdorff expansions and the exact group-side
// logarithm of a product.

#include "bifinsler/algebra.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

/// x + y + [x,y]/2 + ([x,[x,y]] + [y,[y,x]])/12.
AlgebraElement bch3(const AlgebraElement& x, const AlgebraElement& y);

/// Coefficients of Z_r = log(e^{(t-1)rx} e^{ry} e^{-rtx}) through third order:
///   Z_r = lin r (y-x) + quad r^2 [x,y] + cubic_xxy r^3 [x,[x,y]] + cubic_yxy r^3 [y,[x,y]].
/// T may be double or an exact rational type.
template <class T>
struct ZrCoefficients {
  T lin, quad, cubic_xxy, cubic_yxy;
};

template <class T>
ZrCoefficients<T> zr_coefficients(const T& t) {
  const T one(1), two(2), six(6), twelve(12);
  return {one, (two * t - one) / two, (six * t * t - six * t + one) / twelve, one / twelve};
}

/// Largest r * max(|x|_inf, |y|_inf) accepted by z_r.
inline constexpr double kZrScaleGuard = 0.5;

/// Third-order Z_r. Throws RangeError when r * max(|x|_inf, |y|_inf) > 0.5.
AlgebraElement z_r(const AlgebraElement& x, const AlgebraElement& y, double t, double r);

/// log(e^x e^y) through the principal logarithm.
AlgebraElement bch_log(const AlgebraElement& x, const AlgebraElement& y, const Tolerances& tol = {});

}  // namespace bifinsler

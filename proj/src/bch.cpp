#include "bifinsler/bch.hpp"

#include <algorithm>
#include <string>

#include "bifinsler/errors.hpp"

namespace bifinsler {

AlgebraElement bch3(const AlgebraElement& x, const AlgebraElement& y) {
  const auto xy = bracket(x, y);
  return x + y + 0.5 * xy + (1.0 / 12.0) * (bracket(x, xy) - bracket(y, xy));
}

AlgebraElement z_r(const AlgebraElement& x, const AlgebraElement& y, double t, double r) {
  require_same_spec(x, y);
  const double scale = r * std::max(x.sup_norm(), y.sup_norm());
  if (scale > kZrScaleGuard)
    throw RangeError("r*max norm = " + std::to_string(scale) + " exceeds " + std::to_string(kZrScaleGuard));
  const auto c = zr_coefficients(t);
  const auto xy = bracket(x, y);
  const double r2 = r * r, r3 = r2 * r;
  return (c.lin * r) * (y - x) + (c.quad * r2) * xy + (c.cubic_xxy * r3) * bracket(x, xy) +
         (c.cubic_yxy * r3) * bracket(y, xy);
}

AlgebraElement bch_log(const AlgebraElement& x, const AlgebraElement& y, const Tolerances& tol) {
  require_same_spec(x, y);
  return log_principal(exp_map(x) * exp_map(y), x.spec(), tol);
}

}  // namespace bifinsler

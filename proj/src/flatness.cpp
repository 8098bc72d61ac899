#include "bifinsler/flatness.hpp"

#include <algorithm>
#include <cmath>

#include "bifinsler/bch.hpp"
#include "bifinsler/curvature.hpp"
#include "bifinsler/errors.hpp"
#include "bifinsler/metric.hpp"

namespace bifinsler {

namespace {

constexpr cplx I{0.0, 1.0};

AlgebraElement checked_difference(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_spec(x, y);
  auto v = y - x;
  if (v.frobenius() <= 1e-14 * std::max({1.0, x.frobenius(), y.frobenius()}))
    throw DegeneratePair("x and y coincide");
  return v;
}

}  // namespace

std::vector<double> default_s_grid(const AlgebraElement& x, const AlgebraElement& y) {
  const double m = std::max({x.sup_norm(), y.sup_norm(), 1e-300});
  std::vector<double> s;
  for (int k = 1; k <= 10; ++k) s.push_back(k * 0.05 / m);
  return s;
}

ConditionResult condition1(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol) {
  const auto v = checked_difference(x, y);
  const double r = dminus(spec, v, bracket(x, bracket(x, v)), tol);
  return {r >= -tol.subdiff, r};
}

ConditionResult condition5(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol) {
  const auto v = checked_difference(x, y);
  const double r = dplus(spec, v, bracket(x, bracket(x, v)), tol);
  return {r >= -tol.subdiff, r};
}

ConditionResult condition4(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol) {
  const auto v = checked_difference(x, y);
  const double s = s_closed(x, y, spec, tol);
  return {s <= 0.25 * norm(spec, v) * tol.subdiff, s};
}

ConditionResult condition3(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const std::vector<double>& s_grid, const Tolerances& tol) {
  const double nv = norm(spec, checked_difference(x, y));
  double worst = 0;
  for (double s : s_grid) worst = std::max(worst, std::abs(dist_exp(s * x, s * y, spec, tol) - s * nv));
  return {worst < tol.distance, worst};
}

ConditionResult condition2(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const std::vector<double>& s_grid, const Tolerances& tol) {
  const auto v = checked_difference(x, y);
  const double nv = norm(spec, v);
  const auto z = norming_adapted(spec, v, tol).z;
  double worst = 0;
  for (double s : s_grid) {
    const auto b = (1.0 / s) * bch_log(s * y, -s * x, tol);
    worst = std::max({worst, std::abs(norm(spec, b) - nv), std::abs(trace_inner(z, b) - nv)});
  }
  return {worst < tol.distance, worst};
}

FlatnessReport classify(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const Tolerances& tol, bool strict) {
  return classify(x, y, spec, default_s_grid(x, y), tol, strict);
}

FlatnessReport classify(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const std::vector<double>& s_grid, const Tolerances& tol, bool strict) {
  FlatnessReport rep;
  rep.spec = spec;
  const ConditionResult c[5] = {condition1(x, y, spec, tol), condition2(x, y, spec, s_grid, tol),
                                condition3(x, y, spec, s_grid, tol), condition4(x, y, spec, tol),
                                condition5(x, y, spec, tol)};
  for (int i = 0; i < 5; ++i) {
    rep.cond[i] = c[i].holds;
    rep.residual[i] = c[i].residual;
  }
  rep.commutator = bracket(x, y).frobenius();
  const bool* k = rep.cond;
  if (k[0] != k[1] || k[1] != k[2]) rep.violation = "conditions (1), (2), (3) disagree";
  else if (k[3] != k[4]) rep.violation = "conditions (4) and (5) disagree";
  else if (k[0] && !k[3]) rep.violation = "condition (1) holds but (4) fails";
  else if (spec.smooth(x.n()) && k[0] != k[3]) rep.violation = "smooth norm but conditions differ";
  else if (spec.strictly_convex(x.n()) && k[4] && rep.commutator >= kStrictCommutatorTol)
    rep.violation = "strictly convex norm, condition (5) holds but [x,y] != 0";
  rep.implication_consistent = rep.violation.empty();
  if (strict && !rep.implication_consistent) throw InconsistentTheorem(rep.violation);
  return rep;
}

U3Example u3_example() {
  const AlgebraSpec u3(Family::u, 3);
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1;
  x(1, 0) = -1;
  x(1, 2) = 1;
  x(2, 1) = -1;
  Mat y = x;
  y(0, 0) = I;
  y(1, 1) = I;
  Mat v = Mat::Zero(3, 3);
  v(0, 0) = I;
  v(1, 1) = I;
  Mat z = Mat::Zero(3, 3);
  z(0, 0) = I;
  Mat z0 = Mat::Zero(3, 3);
  z0(0, 0) = 0.5 * I;
  z0(1, 1) = 0.5 * I;
  return {AlgebraElement(u3, x), AlgebraElement(u3, y), AlgebraElement(u3, v), AlgebraElement(u3, z),
          AlgebraElement(u3, z0)};
}

}  // namespace bifinsler

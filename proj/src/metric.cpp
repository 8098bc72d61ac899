#include "bifinsler/metric.hpp"

#include <cmath>
#include <numbers>

#include "bifinsler/errors.hpp"

namespace bifinsler {

void PathSample::validate() const {
  if (times.size() != points.size()) throw ConfigError("path times and points differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0 || times[i] > 1) throw ConfigError("path time outside [0,1]");
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("path times must be strictly increasing");
    if (unitarity_defect(points[i]) > 1e-8) throw ConfigError("path point is not unitary");
  }
}

double dist_local(const Mat& g, const Mat& h, const AlgebraSpec& algebra, const NormSpec& spec,
                  const Tolerances& tol) {
  return norm(spec, log_principal(h * g.adjoint(), algebra, tol));
}

double dist_exp(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec, const Tolerances& tol) {
  require_same_spec(x, y);
  return dist_local(exp_map(x), exp_map(y), x.spec(), spec, tol);
}

double path_length(const PathSample& path, const AlgebraSpec& algebra, const NormSpec& spec,
                   const Tolerances& tol) {
  path.validate();
  double total = 0;
  for (std::size_t i = 1; i < path.points.size(); ++i)
    total += norm(spec, log_principal(path.points[i - 1].adjoint() * path.points[i], algebra, tol));
  return total;
}

Extrapolation norm_from_distance(const AlgebraElement& v, const NormSpec& spec, const Tolerances& tol) {
  if (v.frobenius() == 0) throw ZeroVector("norm_from_distance of the zero vector");
  const Mat one = Mat::Identity(v.n(), v.n());
  double t = 0.1;
  const double sup = v.sup_norm();
  if (t * sup > 0.5) t = 0.5 / sup;
  constexpr int kNodes = 7;
  double f[kNodes];
  for (int k = 0; k < kNodes; ++k, t *= 0.5) f[k] = dist_local(one, exp_map(t * v), v.spec(), spec, tol) / t;
  Extrapolation out;
  out.nodes = kNodes;
  double prev = 2 * f[1] - f[0];
  for (int k = 2; k < kNodes; ++k) {
    const double cur = 2 * f[k] - f[k - 1];
    out.residual = std::abs(cur - prev);
    out.value = cur;
    prev = cur;
  }
  out.converged = out.residual < 1e-9 * std::max(1.0, std::abs(out.value));
  return out;
}

BoundsCheck bounds_check(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                         const Tolerances& tol) {
  BoundsCheck out;
  out.distance = dist_exp(x, y, spec, tol);
  out.norm_diff = norm(spec, y - x);
  out.upper_ok = out.distance <= out.norm_diff + 1e-9;
  out.lower_ok = out.distance >= (2.0 / std::numbers::pi) * out.norm_diff - 1e-9;
  out.ratio = out.norm_diff > 0 ? out.distance / out.norm_diff : 1.0;
  return out;
}

}  // namespace bifinsler

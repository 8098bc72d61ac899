#pragma once

// The curvature form S(x, y) and sectional curvature of 2-planes.

#include <optional>
#include <string_view>

#include "bifinsler/algebra.hpp"
#include "bifinsler/metric.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

/// S(x,y) = -(|v|/4) max_{phi in N_v} phi([x,[x,v]]), v = y - x.
/// Throws DegeneratePair when x = y.
double s_closed(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec, const Tolerances& tol = {});
/// The same value through -(|v|/4) max phi([y,[y,v]]).
double s_closed_swapped(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const Tolerances& tol = {});

/// 6|v| lim (r|v| - d(e^{rx}, e^{ry})) / r^3.
Extrapolation s_limit_def(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                          const Tolerances& tol = {});
/// 6|v| lim (d(e^{r^2 x}, e^{r^2 y}) - r d(e^{rx}, e^{ry})) / r^4.
Extrapolation s_limit_alt(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                          const Tolerances& tol = {});

/// Both limits are sampled at r_k = r0 2^{-k}, k = 0..7, with r0 = 0.2 shrunk
/// so that r0 max(|x|_inf, |y|_inf) <= 0.5. The estimators are even in r, so
/// one Richardson step removes the r^2 term; among the extrapolants the one
/// closest to its predecessor is reported. Throws NoConvergence when that gap
/// exceeds max(1e-3, 1e-2 |S|).
inline constexpr int kLimitNodes = 8;

/// 1/4 |[x,y]|^2 in the trace inner product.
double riemannian_s(const AlgebraElement& x, const AlgebraElement& y);

struct Routes {
  bool closed = true, def = true, alt = true;
  /// Comma-separated subset of "closed,def,alt". Throws ConfigError.
  static Routes parse(std::string_view text);
};

struct CurvatureReport {
  std::optional<double> s_closed, s_limit_def, s_limit_alt;
  std::optional<Extrapolation> def_diag, alt_diag;
  double agreement = 0;  // largest pairwise gap between computed estimators
};

CurvatureReport curvature_report(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                                 Routes routes = {}, const Tolerances& tol = {});

class Plane {
 public:
  /// Orthonormalizes (a, b) in the trace inner product. Throws DegeneratePlane
  /// when the Gram determinant of a/|a|, b/|b| is <= 1e-12.
  Plane(const AlgebraElement& a, const AlgebraElement& b);

  const AlgebraElement& e1() const { return e1_; }
  const AlgebraElement& e2() const { return e2_; }
  /// cos(theta) e1 + sin(theta) e2.
  AlgebraElement at(double theta) const;

 private:
  AlgebraElement e1_, e2_;
};

struct SecOptions {
  int grid = 720;          // angles per coordinate over [0, pi)
  int golden_iters = 20;   // per coordinate, per sweep
  int sweeps = 2;
};

struct SecReport {
  double sec_raw = 0;
  /// max over the plane of |[u,v]| / (2 |u| |v|).
  double c = 0;
  /// sec_raw / c^2 when c > 1, else sec_raw.
  double sec_rescaled = 0;
  /// Square root of max over the plane of |[a,[b,a]]| / (4 |a|^2 |b|).
  double c_nested = 0;
  /// sec_raw / c_nested^2: sec for the norm rescaled so that
  /// |[a,[b,a]]| <= 4 |a|^2 |b| holds on the plane, which forces sec <= 1
  /// (0 for abelian planes).
  double sec_normalized = 0;
  double theta = 0, psi = 0;  // maximizing angles of x and y
};

/// sec(pi) = 1/4 max_{|x|=|y|=1} min_{phi in N_y} phi([x,[y,x]]) over the
/// plane, by grid search plus coordinate-wise golden-section refinement. The
/// result is a lower bound for the true maximum up to grid resolution.
SecReport sec_plane(const Plane& plane, const NormSpec& spec, const SecOptions& opt = {}, const Tolerances& tol = {});

}  // namespace bifinsler

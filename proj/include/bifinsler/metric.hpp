#pragma once

// Local bi-invariant distance induced by an Ad-invariant norm.

#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

struct PathSample {
  std::vector<double> times;
  std::vector<Mat> points;

  /// Throws ConfigError unless times are strictly increasing in [0,1], sizes
  /// match and every point is unitary.
  void validate() const;
};

/// |log(h g^{-1})| inside the principal chart. Throws BranchBoundary outside.
double dist_local(const Mat& g, const Mat& h, const AlgebraSpec& algebra, const NormSpec& spec,
                  const Tolerances& tol = {});

/// d(e^x, e^y).
double dist_exp(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec, const Tolerances& tol = {});

/// Sum of |log(p_i^{-1} p_{i+1})| over consecutive samples.
double path_length(const PathSample& path, const AlgebraSpec& algebra, const NormSpec& spec,
                   const Tolerances& tol = {});

struct Extrapolation {
  double value = 0;
  double residual = 0;  // gap between the last two extrapolants
  int nodes = 0;
  bool converged = false;
};

/// lim_{t->0+} d(1, e^{tv})/t with nodes t_k = t0 2^{-k}, k = 0..6, and
/// two-term elimination. t0 = 0.1, reduced when 0.1 |v|_inf > 0.5.
/// Throws ZeroVector for v = 0.
Extrapolation norm_from_distance(const AlgebraElement& v, const NormSpec& spec, const Tolerances& tol = {});

struct BoundsCheck {
  bool upper_ok = false;
  bool lower_ok = false;
  double ratio = 1;  // d(e^x, e^y) / |y - x|, 1 when x = y
  double distance = 0;
  double norm_diff = 0;
};

/// (2/pi)|y-x| <= d(e^x, e^y) <= |y-x|, each with slack 1e-9.
BoundsCheck bounds_check(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                         const Tolerances& tol = {});

}  // namespace bifinsler

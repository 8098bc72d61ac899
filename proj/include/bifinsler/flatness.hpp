#pragma once

// The five flatness conditions for a pair (x, y), v = y - x, w = [x,[x,v]]:
//   (1) phi(w) = 0 for every phi norming v
//   (2) s^{-1} log(e^{sy} e^{-sx}) stays in the exposed face of the adapted
//       norming functional of v, for small s
//   (3) d(e^{sx}, e^{sy}) = s|v| for small s
//   (4) S(x, y) = 0
//   (5) phi(w) = 0 for some phi norming v
// They satisfy (1) <=> (2) <=> (3) => (4) <=> (5).

#include <string>
#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

struct ConditionResult {
  bool holds = false;
  double residual = 0;
};

/// s_k = k * 0.05 / max(|x|_inf, |y|_inf), k = 1..10.
std::vector<double> default_s_grid(const AlgebraElement& x, const AlgebraElement& y);

/// dminus(v, w) >= -tol.subdiff; residual is dminus(v, w).
ConditionResult condition1(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol = {});
/// With z the adapted norming vector of v and B_s = s^{-1} log(e^{sy} e^{-sx}):
/// | |B_s| - |v| | and |<z, B_s> - |v|| below tol.distance on the grid.
/// Residual is the largest deviation.
ConditionResult condition2(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const std::vector<double>& s_grid, const Tolerances& tol = {});
/// |d(e^{sx}, e^{sy}) - s|v|| < tol.distance on the grid; residual is the
/// largest deviation.
ConditionResult condition3(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const std::vector<double>& s_grid, const Tolerances& tol = {});
/// S(x, y) <= (|v|/4) tol.subdiff; residual is S(x, y).
ConditionResult condition4(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol = {});
/// dplus(v, w) >= -tol.subdiff; residual is dplus(v, w).
ConditionResult condition5(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                           const Tolerances& tol = {});

/// Commutator bound implied by condition (5) for strictly convex norms.
inline constexpr double kStrictCommutatorTol = 1e-6;

struct FlatnessReport {
  NormSpec spec = NormSpec::spectral();
  bool cond[5] = {false, false, false, false, false};
  double residual[5] = {0, 0, 0, 0, 0};
  bool implication_consistent = false;
  double commutator = 0;  // ||[x,y]||_F
  std::string violation;  // empty when consistent
};

/// Runs all five conditions and checks the implication lattice, the collapse
/// for smooth norms and the commutator bound for strictly convex norms.
/// Throws InconsistentTheorem on a violation unless strict is false, in which
/// case the report carries implication_consistent = false.
FlatnessReport classify(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const Tolerances& tol = {}, bool strict = true);
FlatnessReport classify(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const std::vector<double>& s_grid, const Tolerances& tol = {}, bool strict = true);

/// Five matrices in u(3) with v = y - x = i diag(1,1,0), z = i diag(1,0,0)
/// and z0 = i diag(1/2,1/2,0). Both z and z0 norm v for the spectral norm;
/// only z0 is adapted; [P_v x, z] = 0 while [P_v x, z0] != 0.
struct U3Example {
  AlgebraElement x, y, v, z, z0;
};
U3Example u3_example();

}  // namespace bifinsler

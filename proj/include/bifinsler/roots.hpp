#pragma once

// Root-space structure: explicit root data for su(n), the projection P_v onto
// the root spaces supporting v, and adaptedness of norming vectors.

#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

struct RootVectors {
  int j, k;  // alpha(i diag(lambda)) = lambda_j - lambda_k
  AlgebraElement h, u, v;
};

struct RootData {
  int n;
  std::vector<AlgebraElement> cartan_basis;
  std::vector<RootVectors> positive_roots;

  /// alpha(h) = <h_alpha, h>.
  static double alpha(const RootVectors& root, const AlgebraElement& h) { return trace_inner(root.h, h); }
};

/// Diagonal Cartan subalgebra of su(n) and the roots lambda_j - lambda_k,
/// j < k, with h_alpha = i(E_jj - E_kk), u_alpha = (E_jk - E_kj)/sqrt2 and
/// v_alpha = i(E_jk + E_kj)/sqrt2, so that [h,u] = alpha(h) v,
/// [h,v] = -alpha(h) u and [u,v] = h_alpha. Requires n >= 2.
RootData su_root_data(int n);

/// Orthogonal projection of x onto range(ad v), from the SVD of ad v with
/// relative singular-value cutoff 1e-9.
AlgebraElement proj_pv(const AlgebraElement& v, const AlgebraElement& x);

/// The same projection computed in v's eigenbasis by zeroing the diagonal
/// blocks of x over clusters of equal eigenvalues.
AlgebraElement proj_pv_eigen(const AlgebraElement& v, const AlgebraElement& x, const Tolerances& tol = {});

/// True iff z is constant on every eigenvalue cluster of v, i.e. equal
/// eigenvalues of v force equal eigenvalues of z in a common eigenbasis.
/// Throws NotCommuting unless ||[z,v]|| <= tol.subdiff max(1, |z| |v|).
bool adapted_check(const AlgebraElement& z, const AlgebraElement& v, const Tolerances& tol = {});

struct TeonbisResult {
  bool lhs_zero = false;  // |<z, [x,[x,v]]>| < tol.subdiff
  bool rhs_zero = false;  // ||[P_v x, z]||_F < tol.subdiff
  double lhs = 0, rhs = 0;
};

/// Evaluates both sides of phi([x,[x,v]]) = 0 <=> [P_v x, z] = 0 for a
/// certified norming vector z of v. Throws InvalidElement for an uncertified
/// z and InconsistentTheorem when the two sides disagree.
TeonbisResult teonbis_check(const AlgebraElement& x, const AlgebraElement& v, const NormingVector& z,
                            const NormSpec& spec, const Tolerances& tol = {});

}  // namespace bifinsler

#pragma once

// Ad-invariant norms on matrix Lie algebras, realized as absolutely symmetric
// gauge functions of the eigenvalues of -i v.
//
// Norming functionals are represented by matrices z in the algebra through
// the trace inner product, phi = <z, .>. For su(n) the functional is the
// restriction of a u(n) functional, so z is the traceless part of a u(n)
// norming matrix and its dual norm is the quotient norm
// min_c ||z + icI||_dual (see dual_norm).

#include <string>
#include <string_view>
#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

enum class NormKind { Spectral, Trace, Schatten, KyFan, Frobenius };

class NormSpec {
 public:
  static NormSpec spectral() { return NormSpec(NormKind::Spectral, 0, 0); }
  static NormSpec trace() { return NormSpec(NormKind::Trace, 0, 0); }
  static NormSpec frobenius() { return NormSpec(NormKind::Frobenius, 2, 0); }
  static NormSpec schatten(double p);
  static NormSpec kyfan(int k);

  /// Grammar: "spectral" | "trace" | "frobenius" | "schatten:p=<real>" |
  /// "kyfan:k=<int>". Throws ConfigError.
  static NormSpec parse(std::string_view text);

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  int k() const { return k_; }

  /// Smoothness and strict convexity of the gauge on R^n. Every gauge is
  /// both when n = 1; otherwise exactly the Schatten and Frobenius norms.
  bool smooth(int n) const;
  bool strictly_convex(int n) const;

  std::string to_string() const;

  bool operator==(const NormSpec&) const = default;

 private:
  NormSpec(NormKind kind, double p, int k) : kind_(kind), p_(p), k_(k) {}

  NormKind kind_;
  double p_;
  int k_;
};

/// Gauge value g(lambda) and its dual gauge on eigenvalue vectors.
double gauge_value(const NormSpec& spec, const RealVec& lambda);
double gauge_dual(const NormSpec& spec, const RealVec& mu);

double norm(const NormSpec& spec, const AlgebraElement& v);

/// Dual norm of phi = <z, .> as a functional on the algebra of z.
double dual_norm(const NormSpec& spec, const AlgebraElement& z);

struct NormingVector {
  AlgebraElement z;
  AlgebraElement v;
  bool certified = false;
};

/// Eigen-structure of a fixed nonzero v: eigenvectors, eigenvalues snapped to
/// their clusters, and the cluster layout. Evaluating lateral derivatives in
/// many directions through one frame costs one eigendecomposition.
class SpectralFrame {
 public:
  struct Cluster {
    int start;
    int size;
  };

  /// Throws ZeroVector if v = 0.
  SpectralFrame(const NormSpec& spec, const AlgebraElement& v, const Tolerances& tol = {});

  const NormSpec& spec() const { return spec_; }
  const AlgebraSpec& algebra() const { return algebra_; }
  /// Columns are eigenvectors of -i v, eigenvalues ascending.
  const Mat& eigenvectors() const { return vecs_; }
  const RealVec& eigenvalues() const { return vals_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  double norm() const { return norm_; }

  /// max_{phi in N_v} phi(w); right derivative of the norm at v along w.
  double dplus(const AlgebraElement& w) const;
  /// min_{phi in N_v} phi(w).
  double dminus(const AlgebraElement& w) const;
  /// dplus for a direction already rotated into the frame: k = U* (-i w) U.
  double dplus_rotated(const Mat& k) const;

  /// Directional derivative of the gauge at the frame eigenvalues along an
  /// eigenvalue perturbation d (frame order). Equals dplus_rotated(k) when
  /// every cluster is a singleton and d = diag(k).
  double gauge_direction(const RealVec& d) const;
  bool simple_spectrum() const { return static_cast<int>(clusters_.size()) == vals_.size(); }

  /// The norming vector of minimal Frobenius norm.
  AlgebraElement adapted_norming() const;

  /// Eigenvalue vector (in frame order) of the minimal-norm subgradient.
  RealVec adapted_weights() const;

  /// Face structure of a Ky Fan type gauge (Spectral, Trace, KyFan) at the
  /// frame eigenvalues. With tau the k-th largest |lambda|: `above` holds
  /// indices with |lambda| > tau, `ties` those with |lambda| = tau, and `rank`
  /// counts how much weight the ties carry. When tau = 0 (`degenerate`) the
  /// zero eigenvalues are listed in `zeros` instead.
  struct Face {
    bool degenerate = false;
    std::vector<int> above, ties, zeros;
    int rank = 0;
  };
  const Face& face() const { return face_; }

 private:
  RealVec project_subgradient(const RealVec& q) const;

  NormSpec spec_;
  AlgebraSpec algebra_;
  Mat vecs_;
  RealVec vals_;
  std::vector<Cluster> clusters_;
  double norm_ = 0;
  double tie_ = 0;
  bool kyfan_ = false;
  Face face_;
  RealVec gradient_;
};

double dplus(const NormSpec& spec, const AlgebraElement& v, const AlgebraElement& w, const Tolerances& tol = {});
double dminus(const NormSpec& spec, const AlgebraElement& v, const AlgebraElement& w, const Tolerances& tol = {});

/// Norming vector of minimal Frobenius norm; adapted to v.
NormingVector norming_adapted(const NormSpec& spec, const AlgebraElement& v, const Tolerances& tol = {});

/// Checks ||z||_dual = 1, <z, v> = |v| and [z, v] = 0 at tol.subdiff.
NormingVector certify(const NormSpec& spec, const AlgebraElement& z, const AlgebraElement& v,
                      const Tolerances& tol = {});

/// w lies in the cone C_phi of phi = <z, .>, i.e. <z, w> = |w|.
bool in_cone(const NormSpec& spec, const AlgebraElement& z, const AlgebraElement& w, const Tolerances& tol = {});

}  // namespace bifinsler

#pragma once

// Matrix Lie algebras u(n), su(n), so(n) realized as skew-Hermitian matrices.
//
// All elements live in the ambient space of n x n complex matrices. The inner
// product is <a, b> = Re tr(a b*), which is Ad-invariant and, on su(n), equals
// -B/(2n) for the Killing form B.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bifinsler/tolerances.hpp"

namespace bifinsler {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

enum class Family { u, su, so };

class AlgebraSpec {
 public:
  AlgebraSpec(Family family, int n);

  /// Parses "u:3", "su:2", "so:4".
  static AlgebraSpec parse(std::string_view text);

  Family family() const { return family_; }
  int n() const { return n_; }
  int dim() const;
  std::string to_string() const;

  /// Orthonormal basis for the trace inner product, built once per spec.
  ///
  /// Ordering: the Hermitian generators H with element = iH are listed as
  /// diagonal units first (for su(n) the normalized Gell-Mann diagonals
  /// diag(1,..,1,-m,0,..)/sqrt(m(m+1))), then the real-symmetric pairs
  /// (E_jk + E_kj)/sqrt2 for j<k in lexicographic order, then the
  /// imaginary-antisymmetric pairs i(E_kj - E_jk)/sqrt2 for j<k. For so(n) only
  /// the last group is present, i.e. the real matrices (E_jk - E_kj)/sqrt2.
  const std::vector<Mat>& basis() const;

  bool operator==(const AlgebraSpec&) const = default;

 private:
  Family family_;
  int n_;
};

class AlgebraElement {
 public:
  /// Validates skew-Hermiticity (and trace/realness for su/so) at relative
  /// tolerance 1e-12; throws InvalidElement.
  AlgebraElement(AlgebraSpec spec, Mat mat);

  /// Nearest element of the algebra (skew-Hermitian part, traceless for su,
  /// real part for so).
  static AlgebraElement project(const AlgebraSpec& spec, const Mat& m);
  static AlgebraElement zero(const AlgebraSpec& spec);
  static AlgebraElement from_coords(const AlgebraSpec& spec, const RealVec& c);

  const AlgebraSpec& spec() const { return spec_; }
  const Mat& mat() const { return mat_; }
  int n() const { return spec_.n(); }

  /// Coordinates in the cached orthonormal basis.
  RealVec coords() const;
  /// The Hermitian generator -i x; its eigenvalues are the spectrum used by
  /// every unitarily invariant norm.
  Mat hermitian() const { return cplx(0, -1) * mat_; }
  /// Eigenvalues of -i x, ascending.
  RealVec eigenvalues() const;
  double frobenius() const { return mat_.norm(); }
  /// Largest |eigenvalue|, i.e. the operator norm.
  double sup_norm() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }

 private:
  struct Unchecked {};
  AlgebraElement(AlgebraSpec spec, Mat mat, Unchecked) : spec_(spec), mat_(std::move(mat)) {}

  AlgebraSpec spec_;
  Mat mat_;
};

/// ad x in the cached basis: m(i, j) = <e_i, [x, e_j]>.
struct AdMatrix {
  AlgebraSpec spec;
  RealMat m;
};

struct CenterSplit {
  AlgebraElement central;
  AlgebraElement semisimple;
};

void require_same_spec(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
double trace_inner(const AlgebraElement& a, const AlgebraElement& b);

/// B(x,y) = tr(ad x o ad y), computed from the ad matrices.
double killing_form(const AlgebraElement& x, const AlgebraElement& y);
/// Closed-form Killing form: 2n tr(xy) - 2 tr x tr y on u(n), 2n tr(xy) on
/// su(n), (n-2) tr(xy) on so(n). Cross-check for killing_form.
double killing_form_trace(const AlgebraElement& x, const AlgebraElement& y);

AdMatrix ad_matrix(const AlgebraElement& x);

/// Matrix exponential; the result is unitary (orthogonal for so).
Mat exp_map(const AlgebraElement& x);

/// Principal logarithm of a unitary matrix, returned as an element of spec.
/// Throws NotUnitary when ||g*g - I||_F > 1e-8 and BranchBoundary when an
/// eigen-angle is within tol.branch of +-pi (or, for su, when the principal
/// logarithm is not traceless).
AlgebraElement log_principal(const Mat& g, const AlgebraSpec& spec, const Tolerances& tol = {});

CenterSplit split_center(const AlgebraElement& x);

/// Ad_g x = g x g*. g must be unitary (real orthogonal for so).
AlgebraElement conjugate(const Mat& g, const AlgebraElement& x);

double unitarity_defect(const Mat& g);

/// Deterministic per-trial seed derived from a base seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Gaussian entries projected to the algebra, rescaled so that the operator
/// norm equals scale.
AlgebraElement random_element(const AlgebraSpec& spec, Rng& rng, double scale = 1.0);
AlgebraElement random_element(const AlgebraSpec& spec, std::uint64_t seed, double scale = 1.0);

/// Haar-distributed unitary (real orthogonal with det 1 when real = true).
Mat random_unitary(int n, Rng& rng, bool real = false);

}  // namespace bifinsler

#include "bifinsler/roots.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "bifinsler/errors.hpp"

namespace bifinsler {

namespace {

constexpr cplx I{0.0, 1.0};

struct Eigenframe {
  Mat vecs;
  std::vector<std::pair<int, int>> clusters;  // (start, size)
};

Eigenframe eigenframe(const AlgebraElement& v, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(v.hermitian());
  const RealVec& vals = es.eigenvalues();
  const int n = v.n();
  const double gap = tol.cluster * std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  Eigenframe f{es.eigenvectors(), {}};
  int start = 0;
  for (int i = 1; i <= n; ++i)
    if (i == n || vals(i) - vals(i - 1) > gap) {
      f.clusters.emplace_back(start, i - start);
      start = i;
    }
  return f;
}

}  // namespace

RootData su_root_data(int n) {
  if (n < 2) throw ConfigError("su root data needs n >= 2");
  const AlgebraSpec spec(Family::su, n);
  RootData rd{n, {}, {}};
  const auto& basis = spec.basis();
  for (int m = 0; m < n - 1; ++m) rd.cartan_basis.emplace_back(spec, basis[m]);
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat h = Mat::Zero(n, n), u = Mat::Zero(n, n), v = Mat::Zero(n, n);
      h(j, j) = I;
      h(k, k) = -I;
      u(j, k) = 1.0 / r2;
      u(k, j) = -1.0 / r2;
      v(j, k) = I / r2;
      v(k, j) = I / r2;
      rd.positive_roots.push_back({j, k, AlgebraElement(spec, h), AlgebraElement(spec, u), AlgebraElement(spec, v)});
    }
  return rd;
}

AlgebraElement proj_pv(const AlgebraElement& v, const AlgebraElement& x) {
  require_same_spec(v, x);
  const RealMat ad = ad_matrix(v).m;
  Eigen::JacobiSVD<RealMat> svd(ad, Eigen::ComputeFullU);
  const RealVec& s = svd.singularValues();
  const double cut = 1e-9 * std::max({s.size() ? s(0) : 0.0, v.frobenius(), 1e-300});
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  const RealMat ur = svd.matrixU().leftCols(rank);
  const RealVec c = x.coords();
  return AlgebraElement::from_coords(x.spec(), ur * (ur.transpose() * c));
}

AlgebraElement proj_pv_eigen(const AlgebraElement& v, const AlgebraElement& x, const Tolerances& tol) {
  require_same_spec(v, x);
  if (v.frobenius() == 0) return AlgebraElement::zero(x.spec());
  const auto f = eigenframe(v, tol);
  Mat k = f.vecs.adjoint() * x.mat() * f.vecs;
  for (auto [start, size] : f.clusters) k.block(start, start, size, size).setZero();
  return AlgebraElement::project(x.spec(), f.vecs * k * f.vecs.adjoint());
}

bool adapted_check(const AlgebraElement& z, const AlgebraElement& v, const Tolerances& tol) {
  require_same_spec(z, v);
  const double scale = std::max(1.0, z.frobenius() * v.frobenius());
  if (bracket(z, v).frobenius() > tol.subdiff * scale) throw NotCommuting("z and v do not commute");
  if (v.frobenius() == 0) return true;
  const auto f = eigenframe(v, tol);
  const Mat k = f.vecs.adjoint() * z.hermitian() * f.vecs;
  const double spread_tol = tol.subdiff * std::max(1.0, z.frobenius());
  for (auto [start, size] : f.clusters) {
    if (size == 1) continue;
    const Mat block = k.block(start, start, size, size);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (block + block.adjoint()), Eigen::EigenvaluesOnly);
    const RealVec& e = es.eigenvalues();
    if (e(size - 1) - e(0) > spread_tol) return false;
  }
  return true;
}

TeonbisResult teonbis_check(const AlgebraElement& x, const AlgebraElement& v, const NormingVector& z,
                            const NormSpec& spec, const Tolerances& tol) {
  (void)spec;
  if (!z.certified) throw InvalidElement("norming vector is not certified");
  require_same_spec(x, v);
  TeonbisResult r;
  r.lhs = trace_inner(z.z, bracket(x, bracket(x, v)));
  r.rhs = bracket(proj_pv(v, x), z.z).frobenius();
  r.lhs_zero = std::abs(r.lhs) < tol.subdiff;
  r.rhs_zero = r.rhs < tol.subdiff;
  if (r.lhs_zero != r.rhs_zero)
    throw InconsistentTheorem("phi([x,[x,v]]) = " + std::to_string(r.lhs) + " but ||[P_v x, z]|| = " +
                              std::to_string(r.rhs));
  return r;
}

}  // namespace bifinsler

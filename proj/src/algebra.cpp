#include "bifinsler/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "bifinsler/errors.hpp"

namespace bifinsler {

bool Tolerances::set(const std::string& name, double value) {
  if (name == "algebraic") algebraic = value;
  else if (name == "subdiff") subdiff = value;
  else if (name == "distance") distance = value;
  else if (name == "cluster") cluster = value;
  else if (name == "branch") branch = value;
  else return false;
  return true;
}

namespace {

constexpr cplx I{0.0, 1.0};

std::vector<Mat> build_basis(Family family, int n) {
  std::vector<Mat> out;
  const double r2 = std::sqrt(2.0);
  if (family == Family::u) {
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(j, j) = I;
      out.push_back(e);
    }
  } else if (family == Family::su) {
    for (int m = 1; m < n; ++m) {
      Mat e = Mat::Zero(n, n);
      const double s = 1.0 / std::sqrt(double(m) * (m + 1));
      for (int j = 0; j < m; ++j) e(j, j) = I * s;
      e(m, m) = -I * (m * s);
      out.push_back(e);
    }
  }
  if (family != Family::so) {
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Mat e = Mat::Zero(n, n);
        e(j, k) = I / r2;
        e(k, j) = I / r2;
        out.push_back(e);
      }
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Mat e = Mat::Zero(n, n);
      e(j, k) = 1.0 / r2;
      e(k, j) = -1.0 / r2;
      out.push_back(e);
    }
  return out;
}

Mat project_matrix(Family family, const Mat& m) {
  Mat s = 0.5 * (m - m.adjoint());
  if (family == Family::su) {
    const cplx t = s.trace() / double(s.rows());
    s.diagonal().array() -= t;
  } else if (family == Family::so) {
    s = s.real().cast<cplx>();
  }
  return s;
}

}  // namespace

AlgebraSpec::AlgebraSpec(Family family, int n) : family_(family), n_(n) {
  if (n < 1) throw ConfigError("matrix size must be positive");
  if (dim() < 1) throw ConfigError("algebra " + to_string() + " is zero-dimensional");
}

AlgebraSpec AlgebraSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("algebra must look like u:3, su:2 or so:4");
  const auto fam = text.substr(0, colon);
  const std::string num(text.substr(colon + 1));
  Family f;
  if (fam == "u") f = Family::u;
  else if (fam == "su") f = Family::su;
  else if (fam == "so") f = Family::so;
  else throw ConfigError("unknown algebra family '" + std::string(fam) + "'");
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(num, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad matrix size '" + num + "'");
  }
  if (used != num.size()) throw ConfigError("bad matrix size '" + num + "'");
  return AlgebraSpec(f, n);
}

int AlgebraSpec::dim() const {
  switch (family_) {
    case Family::u: return n_ * n_;
    case Family::su: return n_ * n_ - 1;
    case Family::so: return n_ * (n_ - 1) / 2;
  }
  return 0;
}

std::string AlgebraSpec::to_string() const {
  const char* f = family_ == Family::u ? "u" : family_ == Family::su ? "su" : "so";
  return std::string(f) + ":" + std::to_string(n_);
}

const std::vector<Mat>& AlgebraSpec::basis() const {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<Mat>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{int(family_), n_}];
  if (!slot) slot = std::make_unique<const std::vector<Mat>>(build_basis(family_, n_));
  return *slot;
}

AlgebraElement::AlgebraElement(AlgebraSpec spec, Mat mat) : spec_(spec), mat_(std::move(mat)) {
  const int n = spec_.n();
  if (mat_.rows() != n || mat_.cols() != n)
    throw InvalidElement("matrix is not " + std::to_string(n) + "x" + std::to_string(n));
  const double tol = 1e-12 * std::max(1.0, mat_.norm());
  if ((mat_ + mat_.adjoint()).norm() > tol) throw InvalidElement("matrix is not skew-Hermitian");
  if (spec_.family() == Family::su && std::abs(mat_.trace()) > tol)
    throw InvalidElement("su element must be traceless");
  if (spec_.family() == Family::so && mat_.imag().norm() > tol)
    throw InvalidElement("so element must be real");
}

AlgebraElement AlgebraElement::project(const AlgebraSpec& spec, const Mat& m) {
  if (m.rows() != spec.n() || m.cols() != spec.n()) throw InvalidElement("matrix size does not match algebra");
  return AlgebraElement(spec, project_matrix(spec.family(), m), Unchecked{});
}

AlgebraElement AlgebraElement::zero(const AlgebraSpec& spec) {
  return AlgebraElement(spec, Mat::Zero(spec.n(), spec.n()), Unchecked{});
}

AlgebraElement AlgebraElement::from_coords(const AlgebraSpec& spec, const RealVec& c) {
  const auto& b = spec.basis();
  if (c.size() != static_cast<Eigen::Index>(b.size())) throw InvalidElement("coordinate vector has wrong length");
  Mat m = Mat::Zero(spec.n(), spec.n());
  for (std::size_t i = 0; i < b.size(); ++i) m += c(i) * b[i];
  return AlgebraElement(spec, std::move(m), Unchecked{});
}

RealVec AlgebraElement::coords() const {
  const auto& b = spec_.basis();
  RealVec c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c(i) = (b[i].conjugate().cwiseProduct(mat_)).sum().real();
  return c;
}

RealVec AlgebraElement::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double AlgebraElement::sup_norm() const {
  return eigenvalues().cwiseAbs().maxCoeff();
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_spec(*this, o);
  mat_ += o.mat_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_spec(*this, o);
  mat_ -= o.mat_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  mat_ *= s;
  return *this;
}

void require_same_spec(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.spec() == b.spec()))
    throw SpecMismatch("operands live in " + a.spec().to_string() + " and " + b.spec().to_string());
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_spec(x, y);
  return AlgebraElement::project(x.spec(), x.mat() * y.mat() - y.mat() * x.mat());
}

double trace_inner(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a, b);
  return (a.mat().cwiseProduct(b.mat().conjugate())).sum().real();
}

AdMatrix ad_matrix(const AlgebraElement& x) {
  const auto& spec = x.spec();
  const auto& b = spec.basis();
  const int d = spec.dim();
  RealMat m(d, d);
  for (int j = 0; j < d; ++j) {
    const Mat c = x.mat() * b[j] - b[j] * x.mat();
    for (int i = 0; i < d; ++i) m(i, j) = (c.cwiseProduct(b[i].conjugate())).sum().real();
  }
  return {spec, std::move(m)};
}

double killing_form(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_spec(x, y);
  const RealMat a = ad_matrix(x).m;
  const RealMat b = ad_matrix(y).m;
  return (a.cwiseProduct(b.transpose())).sum();
}

double killing_form_trace(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_spec(x, y);
  const int n = x.n();
  const double txy = (x.mat() * y.mat()).trace().real();
  switch (x.spec().family()) {
    case Family::u: return 2.0 * n * txy - 2.0 * (x.mat().trace() * y.mat().trace()).real();
    case Family::su: return 2.0 * n * txy;
    case Family::so: return (n - 2.0) * txy;
  }
  return 0.0;
}

Mat exp_map(const AlgebraElement& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(x.hermitian());
  const Mat& v = es.eigenvectors();
  Eigen::VectorXcd ph(x.n());
  for (int j = 0; j < x.n(); ++j) ph(j) = std::polar(1.0, es.eigenvalues()(j));
  Mat g = v * ph.asDiagonal() * v.adjoint();
  if (x.spec().family() == Family::so) g = g.real().cast<cplx>();
  return g;
}

double unitarity_defect(const Mat& g) {
  return (g.adjoint() * g - Mat::Identity(g.rows(), g.cols())).norm();
}

AlgebraElement log_principal(const Mat& g, const AlgebraSpec& spec, const Tolerances& tol) {
  const int n = spec.n();
  if (g.rows() != n || g.cols() != n) throw SpecMismatch("group element size does not match algebra");
  if (unitarity_defect(g) > 1e-8) throw NotUnitary("matrix is not unitary");
  Eigen::ComplexSchur<Mat> schur(g);
  const Mat& t = schur.matrixT();
  const Mat& q = schur.matrixU();
  Eigen::VectorXcd d(n);
  double angle_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a = std::arg(t(j, j));
    if (std::abs(a) > std::numbers::pi - tol.branch)
      throw BranchBoundary("eigen-angle " + std::to_string(a) + " is at the principal-branch boundary");
    d(j) = I * a;
    angle_sum += a;
  }
  if (spec.family() == Family::su && std::abs(angle_sum) > 1e-8 * n)
    throw BranchBoundary("principal logarithm is not traceless");
  return AlgebraElement::project(spec, q * d.asDiagonal() * q.adjoint());
}

CenterSplit split_center(const AlgebraElement& x) {
  const auto& spec = x.spec();
  const int n = x.n();
  bool abelian = (spec.family() == Family::u && n == 1) || (spec.family() == Family::so && n == 2);
  if (abelian) return {x, AlgebraElement::zero(spec)};
  if (spec.family() != Family::u) return {AlgebraElement::zero(spec), x};
  Mat c = Mat::Identity(n, n) * (x.mat().trace() / double(n));
  auto central = AlgebraElement::project(spec, c);
  auto rest = AlgebraElement::project(spec, x.mat() - central.mat());
  return {central, rest};
}

AlgebraElement conjugate(const Mat& g, const AlgebraElement& x) {
  return AlgebraElement::project(x.spec(), g * x.mat() * g.adjoint());
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed ^ (trial * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

AlgebraElement random_element(const AlgebraSpec& spec, Rng& rng, double scale) {
  if (!(scale > 0)) throw ConfigError("scale must be positive");
  std::normal_distribution<double> gauss;
  const int n = spec.n();
  for (;;) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    auto x = AlgebraElement::project(spec, m);
    const double s = x.sup_norm();
    if (s > 1e-8) return x * (scale / s);
  }
}

AlgebraElement random_element(const AlgebraSpec& spec, std::uint64_t seed, double scale) {
  Rng rng(seed);
  return random_element(spec, rng, scale);
}

Mat random_unitary(int n, Rng& rng, bool real) {
  std::normal_distribution<double> gauss;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = real ? cplx(gauss(rng), 0.0) : cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  if (real) {
    q = q.real().cast<cplx>();
    if (q.determinant().real() < 0) q.col(0) *= -1.0;
  }
  return q;
}

}  // namespace bifinsler

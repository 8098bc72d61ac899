#include "bifinsler/norms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "bifinsler/errors.hpp"

namespace bifinsler {

namespace {

constexpr cplx I{0.0, 1.0};

double sgn(double x) { return x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0; }

// Spectral and Trace are the Ky Fan norms with k = 1 and k = n.
int effective_k(const NormSpec& spec, int n) {
  switch (spec.kind()) {
    case NormKind::Spectral: return 1;
    case NormKind::Trace: return n;
    case NormKind::KyFan: return std::min(spec.k(), n);
    default: return 0;
  }
}

bool is_kyfan_like(const NormSpec& spec) {
  return spec.kind() == NormKind::Spectral || spec.kind() == NormKind::Trace || spec.kind() == NormKind::KyFan;
}

double sum_top(std::vector<double> xs, int count) {
  count = std::clamp(count, 0, static_cast<int>(xs.size()));
  std::partial_sort(xs.begin(), xs.begin() + count, xs.end(), std::greater<>());
  return std::accumulate(xs.begin(), xs.begin() + count, 0.0);
}

using Face = SpectralFrame::Face;

Face kyfan_face(const RealVec& lam, int k, double tie) {
  const int n = static_cast<int>(lam.size());
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = std::abs(lam(i));
  std::vector<double> sorted = a;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double tau = sorted[k - 1];
  Face f;
  f.degenerate = tau <= tie;
  for (int i = 0; i < n; ++i) {
    if (f.degenerate) {
      (a[i] > tie ? f.above : f.zeros).push_back(i);
    } else if (a[i] > tau + tie) {
      f.above.push_back(i);
    } else if (a[i] >= tau - tie) {
      f.ties.push_back(i);
    }
  }
  f.rank = k - static_cast<int>(f.above.size());
  return f;
}

double kyfan_direction(const Face& f, const RealVec& lam, const RealVec& d) {
  double out = 0;
  for (int i : f.above) out += sgn(lam(i)) * d(i);
  if (f.rank == 0) return out;
  double buf[64];
  std::vector<double> heap;
  const auto& idx = f.degenerate ? f.zeros : f.ties;
  double* extra = buf;
  if (idx.size() > 64) {
    heap.resize(idx.size());
    extra = heap.data();
  }
  const int m = static_cast<int>(idx.size());
  for (int j = 0; j < m; ++j) extra[j] = f.degenerate ? std::abs(d(idx[j])) : sgn(lam(idx[j])) * d(idx[j]);
  const int count = std::min(f.rank, m);
  if (count == m) return out + std::accumulate(extra, extra + m, 0.0);
  std::partial_sort(extra, extra + count, extra + m, std::greater<>());
  return out + std::accumulate(extra, extra + count, 0.0);
}

// Euclidean projection onto {theta in [0,1]^m : sum theta = total}.
RealVec project_capped_simplex(const RealVec& y, double total) {
  const int m = static_cast<int>(y.size());
  if (total >= m) return RealVec::Ones(m);
  if (total <= 0) return RealVec::Zero(m);
  double lo = y.minCoeff() - 1.0, hi = y.maxCoeff();
  auto mass = [&](double nu) { return (y.array() - nu).max(0.0).min(1.0).sum(); };
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > total ? lo : hi) = mid;
  }
  return (y.array() - 0.5 * (lo + hi)).max(0.0).min(1.0);
}

// Euclidean projection onto {mu : |mu_i| <= 1, sum |mu_i| <= budget}.
RealVec project_l1_box(const RealVec& y, double budget) {
  const int m = static_cast<int>(y.size());
  if (budget <= 0 || m == 0) return RealVec::Zero(m);
  const RealVec a = y.cwiseAbs();
  const RealVec clipped = a.cwiseMin(1.0);
  RealVec mag;
  if (clipped.sum() <= budget) {
    mag = clipped;
  } else {
    double lo = 0, hi = a.maxCoeff();
    auto mass = [&](double nu) { return (a.array() - nu).max(0.0).min(1.0).sum(); };
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mass(mid) > budget ? lo : hi) = mid;
    }
    mag = (a.array() - 0.5 * (lo + hi)).max(0.0).min(1.0);
  }
  RealVec out(m);
  for (int i = 0; i < m; ++i) out(i) = sgn(y(i)) * mag(i);
  return out;
}

RealVec kyfan_project(const Face& f, const RealVec& lam, const RealVec& q) {
  RealVec mu = RealVec::Zero(lam.size());
  for (int i : f.above) mu(i) = sgn(lam(i));
  if (f.degenerate) {
    RealVec y(f.zeros.size());
    for (std::size_t j = 0; j < f.zeros.size(); ++j) y(j) = q(f.zeros[j]);
    const RealVec p = project_l1_box(y, f.rank);
    for (std::size_t j = 0; j < f.zeros.size(); ++j) mu(f.zeros[j]) = p(j);
  } else {
    RealVec y(f.ties.size());
    for (std::size_t j = 0; j < f.ties.size(); ++j) y(j) = sgn(lam(f.ties[j])) * q(f.ties[j]);
    const RealVec theta = project_capped_simplex(y, f.rank);
    for (std::size_t j = 0; j < f.ties.size(); ++j) mu(f.ties[j]) = sgn(lam(f.ties[j])) * theta(j);
  }
  return mu;
}

RealVec schatten_gradient(const RealVec& lam, double p) {
  const double g = lam.cwiseAbs().array().pow(p).sum();
  const double gp = std::pow(g, 1.0 / p);
  RealVec mu(lam.size());
  for (int i = 0; i < lam.size(); ++i)
    mu(i) = sgn(lam(i)) * std::pow(std::abs(lam(i)) / gp, p - 1.0);
  return mu;
}

template <class F>
double golden_min(F f, double lo, double hi, int iters = 120) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(0.5 * (a + b))});
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return s;
}

}  // namespace

NormSpec NormSpec::schatten(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("schatten exponent must be a finite real > 1");
  return NormSpec(NormKind::Schatten, p, 0);
}

NormSpec NormSpec::kyfan(int k) {
  if (k < 1) throw ConfigError("kyfan index must be >= 1");
  return NormSpec(NormKind::KyFan, 0, k);
}

NormSpec NormSpec::parse(std::string_view text) {
  if (text == "spectral") return spectral();
  if (text == "trace") return trace();
  if (text == "frobenius") return frobenius();
  auto value_after = [&](std::string_view prefix) -> std::string {
    return std::string(text.substr(prefix.size()));
  };
  if (text.starts_with("schatten:p=")) {
    const std::string v = value_after("schatten:p=");
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(v, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad schatten exponent '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("bad schatten exponent '" + v + "'");
    return schatten(p);
  }
  if (text.starts_with("kyfan:k=")) {
    const std::string v = value_after("kyfan:k=");
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(v, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad kyfan index '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("bad kyfan index '" + v + "'");
    return kyfan(k);
  }
  throw ConfigError("unknown norm '" + std::string(text) +
                    "' (expected spectral, trace, frobenius, schatten:p=<real> or kyfan:k=<int>)");
}

bool NormSpec::smooth(int n) const {
  return n == 1 || kind_ == NormKind::Schatten || kind_ == NormKind::Frobenius;
}

bool NormSpec::strictly_convex(int n) const { return smooth(n); }

std::string NormSpec::to_string() const {
  switch (kind_) {
    case NormKind::Spectral: return "spectral";
    case NormKind::Trace: return "trace";
    case NormKind::Frobenius: return "frobenius";
    case NormKind::Schatten: return "schatten:p=" + format_real(p_);
    case NormKind::KyFan: return "kyfan:k=" + std::to_string(k_);
  }
  return "";
}

double gauge_value(const NormSpec& spec, const RealVec& lambda) {
  const RealVec a = lambda.cwiseAbs();
  const int n = static_cast<int>(a.size());
  switch (spec.kind()) {
    case NormKind::Spectral: return a.maxCoeff();
    case NormKind::Trace: return a.sum();
    case NormKind::Frobenius: return a.norm();
    case NormKind::Schatten: return std::pow(a.array().pow(spec.p()).sum(), 1.0 / spec.p());
    case NormKind::KyFan:
      return sum_top(std::vector<double>(a.data(), a.data() + n), effective_k(spec, n));
  }
  return 0;
}

double gauge_dual(const NormSpec& spec, const RealVec& mu) {
  const RealVec a = mu.cwiseAbs();
  const int n = static_cast<int>(a.size());
  switch (spec.kind()) {
    case NormKind::Spectral: return a.sum();
    case NormKind::Trace: return a.maxCoeff();
    case NormKind::Frobenius: return a.norm();
    case NormKind::Schatten: {
      const double q = spec.p() / (spec.p() - 1.0);
      return std::pow(a.array().pow(q).sum(), 1.0 / q);
    }
    case NormKind::KyFan: return std::max(a.maxCoeff(), a.sum() / effective_k(spec, n));
  }
  return 0;
}

double norm(const NormSpec& spec, const AlgebraElement& v) { return gauge_value(spec, v.eigenvalues()); }

double dual_norm(const NormSpec& spec, const AlgebraElement& z) {
  const RealVec mu = z.eigenvalues();
  if (z.spec().family() != Family::su) return gauge_dual(spec, mu);
  const double m = mu.cwiseAbs().maxCoeff();
  if (m == 0) return 0;
  const RealVec ones = RealVec::Ones(mu.size());
  auto f = [&](double c) { return gauge_dual(spec, mu + c * ones); };
  return std::min(f(0.0), golden_min(f, -m, m));
}

SpectralFrame::SpectralFrame(const NormSpec& spec, const AlgebraElement& v, const Tolerances& tol)
    : spec_(spec), algebra_(v.spec()) {
  if (v.frobenius() == 0) throw ZeroVector("norming data requested for the zero vector");
  Eigen::SelfAdjointEigenSolver<Mat> es(v.hermitian());
  vecs_ = es.eigenvectors();
  vals_ = es.eigenvalues();
  const int n = v.n();
  const double scale = vals_.cwiseAbs().maxCoeff();
  tie_ = tol.cluster * scale;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || vals_(i) - vals_(i - 1) > tie_) {
      clusters_.push_back({start, i - start});
      start = i;
    }
  }
  for (const auto& c : clusters_) {
    const double mean = vals_.segment(c.start, c.size).mean();
    vals_.segment(c.start, c.size).setConstant(mean);
  }
  norm_ = gauge_value(spec_, vals_);
  kyfan_ = is_kyfan_like(spec_);
  if (kyfan_) face_ = kyfan_face(vals_, effective_k(spec_, n), tie_);
  else gradient_ = schatten_gradient(vals_, spec_.p());
}

double SpectralFrame::gauge_direction(const RealVec& d) const {
  return kyfan_ ? kyfan_direction(face_, vals_, d) : gradient_.dot(d);
}

double SpectralFrame::dplus_rotated(const Mat& k) const {
  RealVec d(vals_.size());
  for (const auto& c : clusters_) {
    if (c.size == 1) {
      d(c.start) = k(c.start, c.start).real();
    } else {
      const Mat block = k.block(c.start, c.start, c.size, c.size);
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (block + block.adjoint()), Eigen::EigenvaluesOnly);
      d.segment(c.start, c.size) = es.eigenvalues();
    }
  }
  return gauge_direction(d);
}

double SpectralFrame::dplus(const AlgebraElement& w) const {
  if (!(w.spec() == algebra_)) throw SpecMismatch("direction lives in " + w.spec().to_string());
  return dplus_rotated(vecs_.adjoint() * w.hermitian() * vecs_);
}

double SpectralFrame::dminus(const AlgebraElement& w) const { return -dplus(-w); }

RealVec SpectralFrame::project_subgradient(const RealVec& q) const {
  return kyfan_ ? kyfan_project(face_, vals_, q) : gradient_;
}

RealVec SpectralFrame::adapted_weights() const {
  const int n = static_cast<int>(vals_.size());
  RealVec mu;
  if (algebra_.family() == Family::su) {
    // Minimize the traceless part over the subdifferential: the traceless part
    // of mu is mu - c1 with c the mean, so minimize dist(c1, subdifferential)
    // over c. Its derivative sum_i (c - P(c1)_i) is nondecreasing.
    const RealVec ones = RealVec::Ones(n);
    auto slope = [&](double c) { return (c * ones - project_subgradient(c * ones)).sum(); };
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (slope(mid) > 0 ? hi : lo) = mid;
    }
    mu = project_subgradient(0.5 * (lo + hi) * ones);
    mu.array() -= mu.mean();
  } else {
    mu = project_subgradient(RealVec::Zero(n));
  }
  for (const auto& c : clusters_) {
    const double mean = mu.segment(c.start, c.size).mean();
    mu.segment(c.start, c.size).setConstant(mean);
  }
  return mu;
}

AlgebraElement SpectralFrame::adapted_norming() const {
  const RealVec mu = adapted_weights();
  const Mat z = I * (vecs_ * mu.cast<cplx>().asDiagonal() * vecs_.adjoint());
  return AlgebraElement::project(algebra_, z);
}

double dplus(const NormSpec& spec, const AlgebraElement& v, const AlgebraElement& w, const Tolerances& tol) {
  require_same_spec(v, w);
  return SpectralFrame(spec, v, tol).dplus(w);
}

double dminus(const NormSpec& spec, const AlgebraElement& v, const AlgebraElement& w, const Tolerances& tol) {
  require_same_spec(v, w);
  return SpectralFrame(spec, v, tol).dminus(w);
}

NormingVector certify(const NormSpec& spec, const AlgebraElement& z, const AlgebraElement& v,
                      const Tolerances& tol) {
  require_same_spec(z, v);
  const double nv = norm(spec, v);
  const double scale = std::max(1.0, nv);
  bool ok = std::abs(dual_norm(spec, z) - 1.0) <= tol.subdiff;
  ok = ok && std::abs(trace_inner(z, v) - nv) <= tol.subdiff * scale;
  ok = ok && bracket(z, v).frobenius() <= tol.subdiff * scale;
  return {z, v, ok};
}

NormingVector norming_adapted(const NormSpec& spec, const AlgebraElement& v, const Tolerances& tol) {
  const SpectralFrame frame(spec, v, tol);
  return certify(spec, frame.adapted_norming(), v, tol);
}

bool in_cone(const NormSpec& spec, const AlgebraElement& z, const AlgebraElement& w, const Tolerances& tol) {
  require_same_spec(z, w);
  const double nw = norm(spec, w);
  return std::abs(trace_inner(z, w) - nw) <= tol.subdiff * std::max(1.0, nw);
}

}  // namespace bifinsler

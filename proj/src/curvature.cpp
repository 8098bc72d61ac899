#include "bifinsler/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bifinsler/errors.hpp"

namespace bifinsler {

namespace {

AlgebraElement difference_checked(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_spec(x, y);
  auto v = y - x;
  const double scale = std::max({1.0, x.frobenius(), y.frobenius()});
  if (v.frobenius() <= 1e-14 * scale) throw DegeneratePair("x and y coincide");
  return v;
}

double limit_start(const AlgebraElement& x, const AlgebraElement& y) {
  const double m = std::max(x.sup_norm(), y.sup_norm());
  double r0 = 0.2;
  if (r0 * m > 0.5) r0 = 0.5 / m;
  return r0;
}

Extrapolation extrapolate(const std::function<double(double)>& f, double r0) {
  double vals[kLimitNodes];
  double r = r0;
  for (int k = 0; k < kLimitNodes; ++k, r *= 0.5) vals[k] = f(r);
  double ext[kLimitNodes - 1];
  for (int k = 0; k + 1 < kLimitNodes; ++k) ext[k] = (4.0 * vals[k + 1] - vals[k]) / 3.0;
  Extrapolation out;
  out.nodes = kLimitNodes;
  out.residual = std::numeric_limits<double>::infinity();
  for (int k = 1; k + 1 < kLimitNodes; ++k) {
    const double gap = std::abs(ext[k] - ext[k - 1]);
    if (gap < out.residual) {
      out.residual = gap;
      out.value = ext[k];
    }
  }
  out.converged = out.residual <= std::max(1e-3, 1e-2 * std::abs(out.value));
  if (!out.converged)
    throw NoConvergence("curvature limit did not settle (gap " + std::to_string(out.residual) + ")");
  return out;
}

template <class F>
std::pair<double, double> golden_max(F f, double lo, double hi, int iters, double x0, double f0) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  double best_x = x0, best_f = f0;
  auto keep = [&](double x, double fx) {
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  keep(c, fc);
  keep(d, fd);
  for (int it = 0; it < iters; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
      keep(d, fd);
    }
  }
  return {best_x, best_f};
}

}  // namespace

double s_closed(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec, const Tolerances& tol) {
  const auto v = difference_checked(x, y);
  const SpectralFrame frame(spec, v, tol);
  return -(frame.norm() / 4.0) * frame.dplus(bracket(x, bracket(x, v)));
}

double s_closed_swapped(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                        const Tolerances& tol) {
  const auto v = difference_checked(x, y);
  const SpectralFrame frame(spec, v, tol);
  return -(frame.norm() / 4.0) * frame.dplus(bracket(y, bracket(y, v)));
}

Extrapolation s_limit_def(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                          const Tolerances& tol) {
  const double nv = norm(spec, difference_checked(x, y));
  auto f = [&](double r) {
    const double d = dist_exp(r * x, r * y, spec, tol);
    return 6.0 * nv * (r * nv - d) / (r * r * r);
  };
  return extrapolate(f, limit_start(x, y));
}

Extrapolation s_limit_alt(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                          const Tolerances& tol) {
  const double nv = norm(spec, difference_checked(x, y));
  auto f = [&](double r) {
    const double d2 = dist_exp((r * r) * x, (r * r) * y, spec, tol);
    const double d1 = dist_exp(r * x, r * y, spec, tol);
    return 6.0 * nv * (d2 - r * d1) / (r * r * r * r);
  };
  return extrapolate(f, limit_start(x, y));
}

double riemannian_s(const AlgebraElement& x, const AlgebraElement& y) {
  const auto b = bracket(x, y);
  return 0.25 * trace_inner(b, b);
}

Routes Routes::parse(std::string_view text) {
  Routes r{false, false, false};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto tok = text.substr(pos, comma - pos);
    if (tok == "closed") r.closed = true;
    else if (tok == "def") r.def = true;
    else if (tok == "alt") r.alt = true;
    else throw ConfigError("unknown curvature route '" + std::string(tok) + "' (expected closed, def, alt)");
    pos = comma + 1;
  }
  return r;
}

CurvatureReport curvature_report(const AlgebraElement& x, const AlgebraElement& y, const NormSpec& spec,
                                 Routes routes, const Tolerances& tol) {
  CurvatureReport rep;
  std::vector<double> vals;
  if (routes.closed) {
    rep.s_closed = s_closed(x, y, spec, tol);
    vals.push_back(*rep.s_closed);
  }
  if (routes.def) {
    rep.def_diag = s_limit_def(x, y, spec, tol);
    rep.s_limit_def = rep.def_diag->value;
    vals.push_back(*rep.s_limit_def);
  }
  if (routes.alt) {
    rep.alt_diag = s_limit_alt(x, y, spec, tol);
    rep.s_limit_alt = rep.alt_diag->value;
    vals.push_back(*rep.s_limit_alt);
  }
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) rep.agreement = std::max(rep.agreement, std::abs(vals[i] - vals[j]));
  return rep;
}

Plane::Plane(const AlgebraElement& a, const AlgebraElement& b) : e1_(a), e2_(b) {
  require_same_spec(a, b);
  const double na = a.frobenius(), nb = b.frobenius();
  if (na == 0 || nb == 0) throw DegeneratePlane("plane spanned by a zero vector");
  const double g12 = trace_inner(a, b) / (na * nb);
  if (1.0 - g12 * g12 <= 1e-12) throw DegeneratePlane("spanning vectors are linearly dependent");
  e1_ = (1.0 / na) * a;
  auto w = b - trace_inner(b, e1_) * e1_;
  e2_ = (1.0 / w.frobenius()) * w;
}

AlgebraElement Plane::at(double theta) const { return std::cos(theta) * e1_ + std::sin(theta) * e2_; }

SecReport sec_plane(const Plane& plane, const NormSpec& spec, const SecOptions& opt, const Tolerances& tol) {
  const int m = std::max(opt.grid, 4);
  const double step = std::numbers::pi / m;
  const auto e = bracket(plane.e1(), plane.e2());
  const double ne = norm(spec, e);
  SecReport rep;
  if (e.frobenius() <= tol.algebraic) return rep;

  const auto p = bracket(plane.e1(), e);
  const auto q = bracket(plane.e2(), e);
  std::vector<double> nrm(m), cs(m), sn(m);
  for (int i = 0; i < m; ++i) {
    cs[i] = std::cos(i * step);
    sn[i] = std::sin(i * step);
    nrm[i] = norm(spec, plane.at(i * step));
  }

  // [a, [b, a]] = sin(theta - psi) (cos(theta) [e1, E] + sin(theta) [e2, E]),
  // with E = [e1, e2].
  auto objective = [&](double theta, double psi) {
    const auto b = plane.at(psi);
    const SpectralFrame frame(spec, b, tol);
    const auto a = plane.at(theta);
    const double s = std::sin(theta - psi);
    const auto w = s * (std::cos(theta) * p + std::sin(theta) * q);
    return frame.dminus(w) / (std::pow(norm(spec, a), 2) * frame.norm());
  };

  double best = -std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  RealVec d(plane.e1().n());
  for (int j = 0; j < m; ++j) {
    const SpectralFrame frame(spec, plane.at(j * step), tol);
    const Mat& u = frame.eigenvectors();
    const Mat kp = u.adjoint() * p.hermitian() * u;
    const Mat kq = u.adjoint() * q.hermitian() * u;
    const RealVec dp = kp.diagonal().real(), dq = kq.diagonal().real();
    const bool simple = frame.simple_spectrum();
    for (int i = 0; i < m; ++i) {
      const double s = std::sin((i - j) * step);
      if (s == 0) continue;
      // dminus(s M) is s dminus(M) for s > 0 and s dplus(M) for s < 0.
      double val;
      if (simple) {
        d = cs[i] * dp + sn[i] * dq;
        val = s > 0 ? -frame.gauge_direction(-d) : frame.gauge_direction(d);
      } else {
        const Mat k = cs[i] * kp + sn[i] * kq;
        val = s > 0 ? -frame.dplus_rotated(-k) : frame.dplus_rotated(k);
      }
      val *= s / (nrm[i] * nrm[i] * frame.norm());
      if (val > best) {
        best = val;
        bi = i;
        bj = j;
      }
    }
  }

  double theta = bi * step, psi = bj * step;
  for (int sweep = 0; sweep < opt.sweeps; ++sweep) {
    auto rt = golden_max([&](double t) { return objective(t, psi); }, theta - step, theta + step, opt.golden_iters,
                         theta, best);
    theta = rt.first;
    best = rt.second;
    auto rp = golden_max([&](double t) { return objective(theta, t); }, psi - step, psi + step, opt.golden_iters,
                         psi, best);
    psi = rp.first;
    best = rp.second;
  }

  // Bracket constant of the plane: |[a, b]| / (2 |a| |b|) = (|E| / 2) |sin(theta - psi)| / (|a| |b|).
  auto ratio = [&](double t, double s) {
    return std::abs(std::sin(t - s)) / (norm(spec, plane.at(t)) * norm(spec, plane.at(s)));
  };
  double cbest = 0;
  int ci = 0, cj = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double r = std::abs(std::sin((i - j) * step)) / (nrm[i] * nrm[j]);
      if (r > cbest) {
        cbest = r;
        ci = i;
        cj = j;
      }
    }
  double ct = ci * step, cp = cj * step;
  for (int sweep = 0; sweep < opt.sweeps; ++sweep) {
    auto rt = golden_max([&](double t) { return ratio(t, cp); }, ct - step, ct + step, opt.golden_iters, ct, cbest);
    ct = rt.first;
    cbest = rt.second;
    auto rp = golden_max([&](double s) { return ratio(ct, s); }, cp - step, cp + step, opt.golden_iters, cp, cbest);
    cp = rp.first;
    cbest = rp.second;
  }

  // Nested constant: |[a, [b, a]]| / (4 |a|^2 |b|), the quantity bounded in the sec <= 1 estimate.
  std::vector<double> inner(m);
  for (int i = 0; i < m; ++i) inner[i] = norm(spec, cs[i] * p + sn[i] * q) / (nrm[i] * nrm[i]);
  auto nested = [&](double t, double s) {
    return std::abs(std::sin(t - s)) * norm(spec, std::cos(t) * p + std::sin(t) * q) /
           (4.0 * std::pow(norm(spec, plane.at(t)), 2) * norm(spec, plane.at(s)));
  };
  double nbest = nested(theta, psi);
  int ni = 0, nj = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double r = 0.25 * std::abs(std::sin((i - j) * step)) * inner[i] / nrm[j];
      if (r > nbest) {
        nbest = r;
        ni = i;
        nj = j;
      }
    }
  double nt = ni * step, np = nj * step;
  for (int sweep = 0; sweep < opt.sweeps; ++sweep) {
    auto rt = golden_max([&](double t) { return nested(t, np); }, nt - step, nt + step, opt.golden_iters, nt, nbest);
    nt = rt.first;
    nbest = rt.second;
    auto rp = golden_max([&](double s) { return nested(nt, s); }, np - step, np + step, opt.golden_iters, np, nbest);
    np = rp.first;
    nbest = rp.second;
  }

  rep.sec_raw = 0.25 * best;
  rep.c = 0.5 * ne * cbest;
  rep.c_nested = std::sqrt(nbest);
  rep.sec_rescaled = rep.c > 1 ? rep.sec_raw / (rep.c * rep.c) : rep.sec_raw;
  rep.sec_normalized = nbest > 0 ? rep.sec_raw / nbest : 0.0;
  rep.theta = theta;
  rep.psi = psi;
  return rep;
}

}  // namespace bifinsler

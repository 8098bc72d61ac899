#include "bifinsler/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "bifinsler/flatness.hpp"

namespace bifinsler {

namespace {

constexpr cplx I{0.0, 1.0};

Pair normalized(AlgebraElement x, AlgebraElement y, PairFamily family, double scale) {
  const double m = std::max(x.sup_norm(), y.sup_norm());
  if (m > 0) {
    x *= scale / m;
    y *= scale / m;
  }
  return {std::move(x), std::move(y), family};
}

// Skew-Hermitian matrix that is block diagonal for the given grouping of
// indices, with Gaussian entries.
Mat block_diagonal(const std::vector<int>& group, Rng& rng, bool real) {
  std::normal_distribution<double> g;
  const int n = static_cast<int>(group.size());
  Mat m = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (group[a] == group[b]) m(a, b) = real ? cplx(g(rng), 0) : cplx(g(rng), g(rng));
  return 0.5 * (m - m.adjoint());
}

Pair face_flat(const AlgebraSpec& algebra, const NormSpec& spec, Rng& rng, double scale) {
  const int n = algebra.n();
  const bool real = algebra.family() == Family::so;
  std::uniform_int_distribution<int> level(-2, 2);
  for (;;) {
    // v = U D U* with D having repeated eigenvalues.
    Mat d = Mat::Zero(n, n);
    if (real) {
      for (int b = 0; b + 1 < n; b += 2) {
        const double t = level(rng);
        d(b, b + 1) = t;
        d(b + 1, b) = -t;
      }
    } else {
      RealVec lam(n);
      for (int i = 0; i < n; ++i) lam(i) = level(rng);
      if (algebra.family() == Family::su) lam.array() -= lam.mean();
      for (int i = 0; i < n; ++i) d(i, i) = I * lam(i);
    }
    const auto dv = AlgebraElement::project(algebra, d);
    if (dv.frobenius() < 1e-12) continue;
    // Group indices of the standard basis by the eigenvalue of the adapted
    // norming vector of D. For so(n) work in the eigenbasis of D instead.
    const SpectralFrame frame(spec, dv);
    const RealVec mu = frame.adapted_weights();
    std::vector<int> group(n, -1);
    int groups = 0;
    for (int i = 0; i < n; ++i) {
      if (group[i] >= 0) continue;
      group[i] = groups;
      for (int j = i + 1; j < n; ++j)
        if (group[j] < 0 && std::abs(mu(j) - mu(i)) < 1e-9) group[j] = groups;
      ++groups;
    }
    const Mat& w = frame.eigenvectors();
    Mat xb = w * block_diagonal(group, rng, false) * w.adjoint();
    const Mat u = random_frame(algebra, rng);
    auto x = AlgebraElement::project(algebra, u * xb * u.adjoint());
    auto v = conjugate(u, dv);
    if (x.frobenius() < 1e-12) continue;
    auto y = x + v;
    return normalized(std::move(x), std::move(y), PairFamily::face_flat, scale);
  }
}

}  // namespace

std::string_view to_string(PairFamily f) {
  switch (f) {
    case PairFamily::generic: return "generic";
    case PairFamily::commuting: return "commuting";
    case PairFamily::face_flat: return "face_flat";
    case PairFamily::u3_conjugate: return "u3_conjugate";
  }
  return "";
}

Mat random_frame(const AlgebraSpec& algebra, Rng& rng) {
  return random_unitary(algebra.n(), rng, algebra.family() == Family::so);
}

AlgebraElement random_in_torus(const AlgebraSpec& algebra, const Mat& frame, Rng& rng) {
  std::normal_distribution<double> g;
  const int n = algebra.n();
  Mat d = Mat::Zero(n, n);
  if (algebra.family() == Family::so) {
    for (int b = 0; b + 1 < n; b += 2) {
      const double t = g(rng);
      d(b, b + 1) = t;
      d(b + 1, b) = -t;
    }
  } else {
    for (int i = 0; i < n; ++i) d(i, i) = I * g(rng);
  }
  return AlgebraElement::project(algebra, frame * d * frame.adjoint());
}

Pair sample_pair(const AlgebraSpec& algebra, const NormSpec& spec, PairFamily family, Rng& rng, double scale) {
  switch (family) {
    case PairFamily::generic:
      for (;;) {
        auto x = random_element(algebra, rng);
        auto y = random_element(algebra, rng);
        if ((y - x).frobenius() > 1e-6) return normalized(std::move(x), std::move(y), family, scale);
      }
    case PairFamily::commuting:
      for (;;) {
        const Mat u = random_frame(algebra, rng);
        auto x = random_in_torus(algebra, u, rng);
        auto y = random_in_torus(algebra, u, rng);
        if ((y - x).frobenius() > 1e-6) return normalized(std::move(x), std::move(y), family, scale);
      }
    case PairFamily::face_flat:
      return face_flat(algebra, spec, rng, scale);
    case PairFamily::u3_conjugate: {
      const auto ex = u3_example();
      const AlgebraSpec u3(Family::u, 3);
      if (!(algebra == u3)) return sample_pair(algebra, spec, PairFamily::generic, rng, scale);
      const Mat u = random_unitary(3, rng);
      return normalized(conjugate(u, ex.x), conjugate(u, ex.y), family, scale);
    }
  }
  return sample_pair(algebra, spec, PairFamily::generic, rng, scale);
}

PairFamily family_for_trial(const AlgebraSpec& algebra, std::uint64_t trial) {
  const bool u3 = algebra == AlgebraSpec(Family::u, 3);
  switch (trial % (u3 ? 4 : 3)) {
    case 0: return PairFamily::generic;
    case 1: return PairFamily::commuting;
    case 2: return PairFamily::face_flat;
    default: return PairFamily::u3_conjugate;
  }
}

Pair trial_pair(const AlgebraSpec& algebra, const NormSpec& spec, std::uint64_t seed, std::uint64_t trial,
                double scale) {
  Rng rng(trial_seed(seed, trial));
  return sample_pair(algebra, spec, family_for_trial(algebra, trial), rng, scale);
}

}  // namespace bifinsler

#include <doctest.h>

#include <cmath>
#include <vector>

#include "bifinsler/errors.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/sampling.hpp"
#include "support.hpp"

using namespace bifinsler;
using namespace bifinsler::test;

namespace {

std::vector<NormSpec> all_specs() {
  return {NormSpec::spectral(), NormSpec::trace(), NormSpec::frobenius(), NormSpec::schatten(3),
          NormSpec::kyfan(2)};
}

// Right difference quotient (|v + t w| - |v|) / t.
double quotient(const NormSpec& spec, const AlgebraElement& v, const AlgebraElement& w, double t) {
  return (norm(spec, v + t * w) - norm(spec, v)) / t;
}

// v = U diag(lambda) U* with a random frame, so that faces are non-trivial.
AlgebraElement with_spectrum(const AlgebraSpec& algebra, const std::vector<double>& lambda, Rng& rng) {
  const Mat u = random_frame(algebra, rng);
  Mat d = Mat::Zero(algebra.n(), algebra.n());
  for (int i = 0; i < algebra.n(); ++i) d(i, i) = I * lambda[i];
  return AlgebraElement::project(algebra, u * d * u.adjoint());
}

std::vector<double> tied_spectrum(const AlgebraSpec& algebra) {
  if (algebra.family() == Family::u) return std::vector<double>(algebra.n(), 0.5);
  if (algebra.n() == 2) return {1, -1};
  return {1, 1, -2};
}

}  // namespace

TEST_CASE("norm spec grammar and flags") {
  CHECK(NormSpec::parse("spectral") == NormSpec::spectral());
  CHECK(NormSpec::parse("schatten:p=3").p() == 3.0);
  CHECK(NormSpec::parse("kyfan:k=2").k() == 2);
  CHECK(NormSpec::parse("schatten:p=2.5").to_string() == "schatten:p=2.5");
  for (const auto* bad : {"nuclear", "schatten:p=1", "schatten:p=x", "kyfan:k=0", "kyfan:k=1.5", "schatten"})
    CHECK_THROWS_AS(NormSpec::parse(bad), ConfigError);
  CHECK(NormSpec::frobenius().smooth(3));
  CHECK(NormSpec::schatten(3).strictly_convex(3));
  for (const auto& s : {NormSpec::spectral(), NormSpec::trace(), NormSpec::kyfan(2)}) {
    CHECK_FALSE(s.smooth(3));
    CHECK_FALSE(s.strictly_convex(3));
    CHECK(s.smooth(1));
  }
}

TEST_CASE("norm examples") {
  CHECK(norm(NormSpec::spectral(), idiag({1, 1, 0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(NormSpec::trace(), idiag({1, 0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(NormSpec::frobenius(), ih(pauli_z())) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto v = idiag({3, -2, 0.5, 1});
  CHECK(norm(NormSpec::kyfan(2), v) == doctest::Approx(5.0));
  CHECK(norm(NormSpec::kyfan(1), v) == doctest::Approx(norm(NormSpec::spectral(), v)));
  CHECK(norm(NormSpec::kyfan(4), v) == doctest::Approx(norm(NormSpec::trace(), v)));
  CHECK(norm(NormSpec::schatten(3), v) == doctest::Approx(std::cbrt(27 + 8 + 0.125 + 1)));
  Rng rng(1);
  const auto x = random_element(AlgebraSpec(Family::u, 3), rng);
  const Mat g = random_unitary(3, rng);
  for (const auto& s : all_specs()) {
    CHECK(norm(s, conjugate(g, x)) == doctest::Approx(norm(s, x)).epsilon(1e-13));
    CHECK(norm(s, -x) == doctest::Approx(norm(s, x)).epsilon(1e-15));
  }
}

TEST_CASE("dual norm examples") {
  const auto z = idiag({1, -0.5, 0.25});
  CHECK(dual_norm(NormSpec::trace(), z) == doctest::Approx(1.0));
  CHECK(dual_norm(NormSpec::spectral(), z) == doctest::Approx(1.75));
  CHECK(dual_norm(NormSpec::kyfan(2), z) == doctest::Approx(1.0));
  CHECK(dual_norm(NormSpec::schatten(3), z) == doctest::Approx(std::pow(1 + std::pow(0.5, 1.5) + 0.125, 2.0 / 3)));
  // On su(n) the dual is the quotient norm over the center.
  const auto w = idiag({1.0 / 3, 1.0 / 3, -2.0 / 3}, Family::su);
  CHECK(dual_norm(NormSpec::trace(), w) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(dual_norm(NormSpec::spectral(), w) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dplus examples") {
  const auto spectral = NormSpec::spectral();
  for (double a : {-1.0, 0.5, 3.0})
    for (double b : {-2.0, 0.0, 4.0}) {
      CHECK(dplus(spectral, idiag({2, 1}), idiag({a, b})) == doctest::Approx(a).epsilon(1e-12));
      const double fd = (10 * quotient(spectral, idiag({2, 1}), idiag({a, b}), 1e-7) -
                         quotient(spectral, idiag({2, 1}), idiag({a, b}), 1e-6)) /
                        9;
      CHECK(dplus(spectral, idiag({2, 1}), idiag({a, b})) == doctest::Approx(fd).epsilon(1e-6));
    }
  CHECK(dplus(spectral, idiag({1, 1}), idiag({3, 2})) == doctest::Approx(3.0));
  // Oracle: largest eigenvalue of the compression of -iw to the top eigenspace of -iv.
  const Mat h = (Mat(2, 2) << 1, 2, 2, -1).finished();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  CHECK(dplus(spectral, idiag({1, 1}), ih(h)) == doctest::Approx(es.eigenvalues().maxCoeff()));
  Rng rng(4);
  for (const auto& s : all_specs()) {
    const auto v = random_element(AlgebraSpec(Family::u, 3), rng);
    CHECK(dplus(s, v, v) == doctest::Approx(norm(s, v)).epsilon(1e-12));
    CHECK(dminus(s, v, v) == doctest::Approx(norm(s, v)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(dplus(spectral, AlgebraElement::zero(AlgebraSpec(Family::u, 2)), idiag({1, 0})), ZeroVector);
  CHECK_THROWS_AS(dplus(spectral, idiag({1, 0}), idiag({1, 0, 0})), SpecMismatch);
}

TEST_CASE("dminus examples") {
  CHECK(dminus(NormSpec::spectral(), idiag({1, 1}), idiag({3, 2})) == doctest::Approx(2.0));
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto v = random_element(AlgebraSpec(Family::su, 3), rng);
    const auto w = random_element(AlgebraSpec(Family::su, 3), rng);
    CHECK(std::abs(dminus(NormSpec::frobenius(), v, w) - dplus(NormSpec::frobenius(), v, w)) < 1e-9);
    CHECK(dminus(NormSpec::spectral(), v, w) <= dplus(NormSpec::spectral(), v, w) + 1e-12);
  }
}

TEST_CASE("norming_adapted examples") {
  const auto z = norming_adapted(NormSpec::spectral(), idiag({1, 1, 0}));
  CHECK(z.certified);
  CHECK(max_abs(z.z.mat() - idiag({0.5, 0.5, 0}).mat()) < 1e-12);
  const auto v = random_element(AlgebraSpec(Family::su, 3), 12);
  const auto f = norming_adapted(NormSpec::frobenius(), v);
  CHECK(max_abs(f.z.mat() - (1.0 / v.frobenius()) * v.mat()) < 1e-12);
  const auto t = norming_adapted(NormSpec::trace(), idiag({3, -2}));
  CHECK(max_abs(t.z.mat() - idiag({1, -1}).mat()) < 1e-12);
  CHECK_THROWS_AS(norming_adapted(NormSpec::trace(), AlgebraElement::zero(AlgebraSpec(Family::u, 2))), ZeroVector);
}

TEST_CASE("norming_adapted is the minimal-norm point of the norming set") {
  // Oracle: every vertex of the face is norming and has Frobenius norm at least the adapted one.
  struct Case {
    NormSpec spec;
    std::vector<double> lambda;
    std::vector<std::vector<double>> vertices;
    std::vector<double> expected;
  };
  const std::vector<Case> cases = {
      {NormSpec::spectral(), {2, 2, -2, 1}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}}, {1. / 3, 1. / 3, -1. / 3, 0}},
      {NormSpec::trace(), {2, 0, 0}, {{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}}, {1, 0, 0}},
      {NormSpec::kyfan(2), {3, 1, 1, 0}, {{1, 1, 0, 0}, {1, 0, 1, 0}}, {1, 0.5, 0.5, 0}},
      {NormSpec::kyfan(2), {1, 0, 0}, {{1, 1, 0}, {1, 0, 1}, {1, -1, 0}, {1, 0, -1}}, {1, 0, 0}},
  };
  for (const auto& c : cases) {
    const int n = static_cast<int>(c.lambda.size());
    const AlgebraSpec u(Family::u, n);
    Mat d = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = I * c.lambda[i];
    const AlgebraElement v(u, d);
    const auto z = norming_adapted(c.spec, v);
    REQUIRE(z.certified);
    for (int i = 0; i < n; ++i) CHECK(z.z.mat()(i, i).imag() == doctest::Approx(c.expected[i]).epsilon(1e-10));
    for (const auto& vert : c.vertices) {
      Mat m = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = I * vert[i];
      const AlgebraElement w(u, m);
      REQUIRE(certify(c.spec, w, v).certified);
      CHECK(z.z.frobenius() <= w.frobenius() + 1e-12);
    }
  }
}

TEST_CASE("norming vectors on su(n) restrict from u(n)") {
  const auto v = idiag({1, 1, -2}, Family::su);
  for (const auto& s : all_specs()) {
    const auto z = norming_adapted(s, v);
    CHECK(z.certified);
    CHECK(std::abs(z.z.mat().trace()) < 1e-12);
    CHECK(trace_inner(z.z, v) == doctest::Approx(norm(s, v)).epsilon(1e-10));
  }
}

TEST_CASE("in_cone examples") {
  const auto z = idiag({1, 1});
  CHECK(in_cone(NormSpec::trace(), z, ih((Mat(2, 2) << 1, 1, 1, 1).finished() / 4)));
  CHECK(in_cone(NormSpec::trace(), z, idiag({0.5, 0})));
  CHECK_FALSE(in_cone(NormSpec::trace(), z, idiag({1, -1})));
  CHECK(in_cone(NormSpec::trace(), z, AlgebraElement::zero(AlgebraSpec(Family::u, 2))));
  CHECK(in_cone(NormSpec::spectral(), idiag({0.3, 0.9}), AlgebraElement::zero(AlgebraSpec(Family::u, 2))));
}

TEST_CASE("property: closed-form dplus matches finite differences") {
  const AlgebraSpec su3(Family::su, 3), u3(Family::u, 3);
  const std::vector<std::vector<double>> spectra = {{1, 1, -2}, {1, -1, 0}, {2, -1, -1}};
  for (const auto& s : all_specs()) {
    int failures = 0;
    for (std::uint64_t t = 0; t < 500; ++t) {
      Rng rng(trial_seed(77, t));
      const AlgebraSpec& alg = t % 2 ? su3 : u3;
      const auto v = t % 3 == 0 ? random_element(alg, rng) : with_spectrum(alg, spectra[t % 3], rng);
      const auto w = random_element(alg, rng);
      const double q4 = quotient(s, v, w, 1e-4), q5 = quotient(s, v, w, 1e-5), q6 = quotient(s, v, w, 1e-6);
      const bool monotone = q4 >= q5 - 1e-9 && q5 >= q6 - 1e-9;
      const double limit = (10 * q6 - q5) / 9;
      if (!monotone || std::abs(dplus(s, v, w) - limit) > 1e-6) ++failures;
    }
    CHECK_MESSAGE(failures == 0, s.to_string());
  }
}

TEST_CASE("property: norming vectors satisfy the first and second order inequalities") {
  for (const auto* text : {"u:3", "su:3", "su:2"}) {
    const auto alg = AlgebraSpec::parse(text);
    for (const auto& s : all_specs()) {
      for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(trial_seed(3, t));
        const auto v = t % 2 ? random_element(alg, rng) : with_spectrum(alg, tied_spectrum(alg), rng);
        const auto x = random_element(alg, rng);
        const auto z = norming_adapted(s, v);
        REQUIRE(z.certified);
        CHECK(std::abs(trace_inner(z.z, bracket(v, x))) < 1e-9);
        CHECK(trace_inner(z.z, bracket(x, bracket(x, v))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("property: dual norm is Ad-invariant and dplus is homogeneous in v") {
  Rng rng(21);
  for (const auto* text : {"u:3", "su:3"}) {
    const auto alg = AlgebraSpec::parse(text);
    for (const auto& s : all_specs()) {
      for (int t = 0; t < 20; ++t) {
        const auto z = random_element(alg, rng);
        const Mat g = random_unitary(alg.n(), rng);
        CHECK(std::abs(dual_norm(s, conjugate(g, z)) - dual_norm(s, z)) < 1e-10 * std::max(1.0, dual_norm(s, z)));
        const auto v = with_spectrum(alg, alg.family() == Family::su ? std::vector<double>{1, 1, -2}
                                                                     : std::vector<double>{1, 1, 0.2},
                                     rng);
        const auto w = random_element(alg, rng);
        for (double lam : {0.1, 3.0}) CHECK(std::abs(dplus(s, lam * v, w) - dplus(s, v, w)) < 1e-10);
      }
    }
  }
}

TEST_CASE("spectral frame face structure") {
  const SpectralFrame f(NormSpec::kyfan(2), idiag({3, 1, 1, 0}));
  REQUIRE(f.clusters().size() == 3);
  CHECK_FALSE(f.face().degenerate);
  CHECK(f.face().above.size() == 1);
  CHECK(f.face().ties.size() == 2);
  CHECK(f.face().rank == 1);
  const SpectralFrame g(NormSpec::kyfan(3), idiag({1, 0, 0, 0}));
  CHECK(g.face().degenerate);
  CHECK(g.face().zeros.size() == 3);
  CHECK_FALSE(g.simple_spectrum());
  CHECK(SpectralFrame(NormSpec::trace(), idiag({1, 2, 3})).simple_spectrum());
}

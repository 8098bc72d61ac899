#include <doctest.h>

#include "bifinsler/errors.hpp"
#include "bifinsler/flatness.hpp"
#include "bifinsler/roots.hpp"
#include "bifinsler/sampling.hpp"
#include "support.hpp"

using namespace bifinsler;
using namespace bifinsler::test;

namespace {

std::vector<NormSpec> all_specs() {
  return {NormSpec::spectral(), NormSpec::trace(), NormSpec::frobenius(), NormSpec::schatten(3),
          NormSpec::kyfan(2)};
}

// x minus its diagonal in the eigenbasis of v.
Mat off_diagonal_part(const AlgebraElement& v, const AlgebraElement& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(v.hermitian());
  const Mat& u = es.eigenvectors();
  Mat k = u.adjoint() * x.mat() * u;
  k.diagonal().setZero();
  return u * k * u.adjoint();
}

}  // namespace

TEST_CASE("root data relations") {
  for (int n = 2; n <= 5; ++n) {
    const auto rd = su_root_data(n);
    CHECK(static_cast<int>(rd.cartan_basis.size()) == n - 1);
    CHECK(static_cast<int>(rd.positive_roots.size()) == n * (n - 1) / 2);
    for (const auto& r : rd.positive_roots) {
      CHECK(trace_inner(r.u, r.u) == doctest::Approx(1.0));
      CHECK(trace_inner(r.v, r.v) == doctest::Approx(1.0));
      CHECK(std::abs(trace_inner(r.u, r.v)) < 1e-15);
      CHECK(max_abs((bracket(r.u, r.v) - r.h).mat()) < 1e-10);
      for (const auto& h : rd.cartan_basis) {
        const double a = RootData::alpha(r, h);
        CHECK(max_abs((bracket(h, r.u) - a * r.v).mat()) < 1e-10);
        CHECK(max_abs((bracket(h, r.v) + a * r.u).mat()) < 1e-10);
      }
    }
  }
  const auto r2 = su_root_data(2);
  const auto& root = r2.positive_roots.front();
  Eigen::EigenSolver<RealMat> es(ad_matrix(root.h).m);
  std::vector<double> im;
  for (int i = 0; i < 3; ++i) im.push_back(es.eigenvalues()(i).imag());
  std::sort(im.begin(), im.end());
  const double a = RootData::alpha(root, root.h);
  CHECK(im[0] == doctest::Approx(-a));
  CHECK(std::abs(im[1]) < 1e-14);
  CHECK(im[2] == doctest::Approx(a));
  CHECK(su_root_data(3).positive_roots.size() == 3);
  CHECK_THROWS_AS(su_root_data(1), ConfigError);
}

TEST_CASE("proj_pv examples") {
  const auto ex = u3_example();
  Mat expected = Mat::Zero(3, 3);
  expected(1, 2) = 1;
  expected(2, 1) = -1;
  CHECK(max_abs(proj_pv(ex.v, ex.x).mat() - expected) < 1e-12);
  CHECK(max_abs(proj_pv_eigen(ex.v, ex.x).mat() - expected) < 1e-12);
  const auto a = idiag({1, 2, 3}), b = idiag({-1, 0.5, 2});
  CHECK(proj_pv(a, b).frobenius() < 1e-12);
  const auto v = random_element(AlgebraSpec(Family::u, 4), 3), x = random_element(AlgebraSpec(Family::u, 4), 4);
  CHECK(max_abs(proj_pv(v, x).mat() - off_diagonal_part(v, x)) < 1e-10);
  CHECK(max_abs(proj_pv_eigen(v, x).mat() - off_diagonal_part(v, x)) < 1e-10);
  CHECK(proj_pv(idiag({1, 1, 1}), ex.x).frobenius() < 1e-12);
}

TEST_CASE("adapted_check examples") {
  const auto ex = u3_example();
  CHECK(adapted_check(ex.z0, ex.v));
  CHECK_FALSE(adapted_check(ex.z, ex.v));
  const auto v = idiag({1, 2, 3});
  CHECK(adapted_check(idiag({5, -1, 0.3}), v));
  CHECK_THROWS_AS(adapted_check(ex.x, ex.v), NotCommuting);
}

TEST_CASE("teonbis_check examples") {
  const auto ex = u3_example();
  const auto spectral = NormSpec::spectral();
  const auto z = certify(spectral, ex.z, ex.v);
  const auto z0 = certify(spectral, ex.z0, ex.v);
  REQUIRE(z.certified);
  REQUIRE(z0.certified);
  const auto a = teonbis_check(ex.x, ex.v, z, spectral);
  CHECK(a.lhs_zero);
  CHECK(a.rhs_zero);
  const auto b = teonbis_check(ex.x, ex.v, z0, spectral);
  CHECK_FALSE(b.lhs_zero);
  CHECK_FALSE(b.rhs_zero);
  CHECK(b.rhs > 1e-3);
  const auto w = idiag({0.5, -0.2, 1});
  for (const auto& s : all_specs()) {
    const auto zw = norming_adapted(s, w);
    const auto c = teonbis_check(idiag({1, 0, -1}), w, zw, s);
    CHECK(c.lhs_zero);
    CHECK(c.rhs_zero);
  }
  NormingVector bogus{ex.x, ex.v, false};
  CHECK_THROWS_AS(teonbis_check(ex.x, ex.v, bogus, spectral), InvalidElement);
}

TEST_CASE("property: teonbis biconditional with adapted norming vectors") {
  for (const auto* text : {"u:3", "su:3"}) {
    const auto alg = AlgebraSpec::parse(text);
    for (const auto& s : all_specs()) {
      for (std::uint64_t t = 0; t < 100; ++t) {
        const auto p = trial_pair(alg, s, 23, t);
        const auto v = p.y - p.x;
        const auto z = norming_adapted(s, v);
        REQUIRE(z.certified);
        CHECK(adapted_check(z.z, v));
        TeonbisResult r;
        REQUIRE_NOTHROW(r = teonbis_check(p.x, v, z, s));
        CHECK(r.lhs_zero == r.rhs_zero);
        if (r.lhs_zero) CHECK(bracket(p.x, z.z).frobenius() < 1e-8);
        if (r.lhs_zero && s.strictly_convex(alg.n())) CHECK(bracket(p.x, v).frobenius() < 1e-8);
      }
    }
  }
}

TEST_CASE("property: SVD and eigenbasis projections agree") {
  for (const auto* text : {"u:3", "su:3", "so:4"}) {
    const auto alg = AlgebraSpec::parse(text);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto p = trial_pair(alg, NormSpec::spectral(), 29, t);
      const auto v = p.y - p.x;
      CHECK(max_abs(proj_pv(v, p.x).mat() - proj_pv_eigen(v, p.x).mat()) < 1e-8);
      CHECK(bracket(v, proj_pv(v, p.x) - p.x).frobenius() < 1e-8);
    }
  }
}

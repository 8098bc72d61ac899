#include <doctest.h>

#include "bifinsler/curvature.hpp"
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

bool all_of(const FlatnessReport& r) {
  for (bool c : r.cond)
    if (!c) return false;
  return true;
}

bool none_of(const FlatnessReport& r) {
  for (bool c : r.cond)
    if (c) return false;
  return true;
}

}  // namespace

TEST_CASE("the U(3) example data") {
  const auto ex = u3_example();
  const auto spectral = NormSpec::spectral();
  CHECK(max_abs((ex.y - ex.x).mat() - ex.v.mat()) < 1e-15);
  CHECK(max_abs(ex.v.mat() - idiag({1, 1, 0}).mat()) < 1e-15);
  CHECK(std::abs(norm(spectral, ex.v) - 1) < 1e-12);
  CHECK(std::abs(dual_norm(spectral, ex.z) - 1) < 1e-12);
  CHECK(std::abs(dual_norm(spectral, ex.z0) - 1) < 1e-12);
  CHECK(std::abs(trace_inner(ex.z, ex.v) - 1) < 1e-12);
  CHECK(std::abs(trace_inner(ex.z0, ex.v) - 1) < 1e-12);
  const auto pvx = proj_pv(ex.v, ex.x);
  CHECK(bracket(pvx, ex.z).frobenius() < 1e-12);
  CHECK(bracket(pvx, ex.z0).frobenius() > 1e-3);
  const auto adapted = norming_adapted(spectral, ex.v);
  CHECK(max_abs(adapted.z.mat() - ex.z0.mat()) < 1e-10);
}

TEST_CASE("condition examples on the U(3) pair") {
  const auto ex = u3_example();
  const auto spectral = NormSpec::spectral();
  const auto grid = default_s_grid(ex.x, ex.y);
  CHECK(grid.size() == 10);
  CHECK_FALSE(condition1(ex.x, ex.y, spectral).holds);
  CHECK_FALSE(condition2(ex.x, ex.y, spectral, grid).holds);
  CHECK_FALSE(condition3(ex.x, ex.y, spectral, grid).holds);
  CHECK(condition4(ex.x, ex.y, spectral).holds);
  const auto c5 = condition5(ex.x, ex.y, spectral);
  CHECK(c5.holds);
  CHECK(std::abs(c5.residual) < 1e-10);
  CHECK(std::abs(trace_inner(ex.z, bracket(ex.x, bracket(ex.x, ex.v)))) < 1e-12);
}

TEST_CASE("classify examples") {
  const auto ex = u3_example();
  const auto r = classify(ex.x, ex.y, NormSpec::spectral());
  CHECK_FALSE(r.cond[0]);
  CHECK_FALSE(r.cond[1]);
  CHECK_FALSE(r.cond[2]);
  CHECK(r.cond[3]);
  CHECK(r.cond[4]);
  CHECK(r.implication_consistent);
  CHECK(r.violation.empty());

  const auto a = idiag({0.3, -0.1, 0.2}), b = idiag({-0.4, 0.5, 0.1});
  for (const auto& s : all_specs()) {
    const auto c = classify(a, b, s);
    CHECK(all_of(c));
    CHECK(c.implication_consistent);
  }

  const auto x = random_element(AlgebraSpec(Family::su, 3), 3, 0.5), y = random_element(AlgebraSpec(Family::su, 3), 4, 0.5);
  const auto f = classify(x, y, NormSpec::frobenius());
  CHECK(none_of(f));
  CHECK(f.implication_consistent);
  CHECK(f.commutator > 1e-3);
  CHECK_THROWS_AS(classify(x, ex.y, NormSpec::frobenius()), SpecMismatch);
}

TEST_CASE("the trace norm on u(3) separates (3) from (1)") {
  // With v = i diag(1,1,0), -i s^{-1} log(e^{sy} e^{-sx}) stays positive
  // semidefinite, so the trace-norm distance is exactly s|v| while a norming
  // functional of v is negative on [x,[x,v]].
  const auto ex = u3_example();
  const auto trace = NormSpec::trace();
  const auto grid = default_s_grid(ex.x, ex.y);
  const auto c3 = condition3(ex.x, ex.y, trace, grid);
  CHECK(c3.holds);
  CHECK(c3.residual < 1e-12);
  const auto z = idiag({1, 1, -1});
  const auto cert = certify(trace, z, ex.v);
  REQUIRE(cert.certified);
  const auto w = bracket(ex.x, bracket(ex.x, ex.v));
  CHECK(trace_inner(z, w) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK_FALSE(condition1(ex.x, ex.y, trace).holds);
  const auto r = classify(ex.x, ex.y, trace, {}, false);
  CHECK_FALSE(r.implication_consistent);
  CHECK_FALSE(r.violation.empty());
  CHECK_THROWS_AS(classify(ex.x, ex.y, trace), InconsistentTheorem);
}

TEST_CASE("property: implication lattice on seeded pairs") {
  for (const auto* text : {"su:2", "su:3", "u:3"}) {
    const auto alg = AlgebraSpec::parse(text);
    for (const auto& s : all_specs()) {
      const bool known_gap = alg.family() == Family::u && s == NormSpec::trace();
      for (std::uint64_t t = 0; t < 60; ++t) {
        const auto p = trial_pair(alg, s, 19, t);
        if (known_gap && p.family == PairFamily::u3_conjugate) continue;
        const auto r = classify(p.x, p.y, s, {}, false);
        CHECK_MESSAGE(r.implication_consistent, text << " " << s.to_string() << " trial " << t << ": " << r.violation);
        if (p.family == PairFamily::commuting) CHECK(all_of(r));
        if (s.smooth(alg.n())) CHECK((all_of(r) || none_of(r)));
        if (s.strictly_convex(alg.n()) && r.cond[4]) CHECK(r.commutator < kStrictCommutatorTol);
      }
    }
  }
}

TEST_CASE("property: on su(2) with the spectral norm (5) implies (1)") {
  const AlgebraSpec su2(Family::su, 2);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto p = trial_pair(su2, NormSpec::spectral(), 37, t);
    const auto r = classify(p.x, p.y, NormSpec::spectral());
    CHECK(r.cond[4] == r.cond[0]);
  }
}

TEST_CASE("property: flat planes of strictly convex norms are abelian") {
  const SecOptions quick{90, 10, 1};
  for (const auto& s : {NormSpec::frobenius(), NormSpec::schatten(3)}) {
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto p = trial_pair(AlgebraSpec(Family::su, 3), s, 41, t);
      if (bracket(p.x, p.y).frobenius() < 1e-12 && (p.x.frobenius() < 1e-12 || p.y.frobenius() < 1e-12)) continue;
      SecReport r;
      try {
        r = sec_plane(Plane(p.x, p.y), s, quick);
      } catch (const DegeneratePlane&) {
        continue;
      }
      if (r.sec_raw <= 1e-9) CHECK(bracket(p.x, p.y).frobenius() <= 1e-6);
      if (bracket(p.x, p.y).frobenius() > 1e-3) CHECK(r.sec_raw > 1e-9);
    }
  }
}

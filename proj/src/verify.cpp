#include "bifinsler/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "bifinsler/bch.hpp"
#include "bifinsler/curvature.hpp"
#include "bifinsler/errors.hpp"
#include "bifinsler/flatness.hpp"
#include "bifinsler/metric.hpp"
#include "bifinsler/roots.hpp"
#include "bifinsler/sampling.hpp"

namespace bifinsler {

namespace {

constexpr cplx I{0.0, 1.0};

Outcome check(bool ok, double residual) { return {ok, residual}; }

Outcome at_most(double value, double bound) { return {value <= bound, value}; }

SuiteReport killing_suite(const RunConfig& cfg) {
  const auto& alg = cfg.algebra;
  return run_trials(
      "killing",
      {"ad spectrum imaginary", "killing nonpositive", "killing kernel is center", "killing closed form",
       "jacobi identity", "inner product cyclicity", "killing cyclicity", "split_center projection"},
      cfg.trials, [&](std::uint64_t t) {
        Rng rng(trial_seed(cfg.seed, t));
        auto x = random_element(alg, rng);
        std::uniform_real_distribution<double> unit(0.1, 1.0);
        // Exercise both sides of the kernel criterion: purely central elements
        // and central plus a semisimple part of varying size.
        if (alg.family() == Family::u && t % 4 == 0) {
          x = split_center(x).central;
          if (x.frobenius() == 0) x = AlgebraElement::project(alg, I * Mat::Identity(alg.n(), alg.n()));
        } else if (alg.family() == Family::u && t % 4 == 1) {
          const auto sp = split_center(x);
          x = sp.central + (unit(rng) / std::max(sp.semisimple.frobenius(), 1e-300)) * sp.semisimple;
        }
        const auto y = random_element(alg, rng);
        const auto z = random_element(alg, rng);
        std::vector<Outcome> out;
        Eigen::EigenSolver<RealMat> es(ad_matrix(x).m, false);
        out.push_back(at_most(es.eigenvalues().real().cwiseAbs().maxCoeff(), cfg.tol.algebraic));
        const double b = killing_form(x, x);
        out.push_back(at_most(b, cfg.tol.algebraic));
        const auto sp = split_center(x);
        const bool kernel = std::abs(b) < cfg.tol.algebraic;
        const bool central = sp.semisimple.frobenius() < 1e-8;
        out.push_back(check(kernel == central, std::abs(b)));
        const double bt = killing_form_trace(x, y), ba = killing_form(x, y);
        out.push_back(at_most(std::abs(bt - ba), cfg.tol.algebraic * std::max(1.0, std::abs(ba))));
        const auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        out.push_back(at_most(jac.frobenius(), cfg.tol.algebraic));
        out.push_back(at_most(std::abs(trace_inner(bracket(x, y), z) - trace_inner(x, bracket(y, z))),
                              cfg.tol.algebraic));
        out.push_back(at_most(std::abs(killing_form(bracket(x, y), z) - killing_form(x, bracket(y, z))),
                              cfg.tol.algebraic * std::max(1.0, double(alg.n()))));
        const auto again = split_center(sp.central);
        const double split_err = (sp.central + sp.semisimple - x).frobenius() +
                                 std::abs(trace_inner(sp.central, sp.semisimple)) +
                                 again.semisimple.frobenius() + (again.central - sp.central).frobenius();
        out.push_back(at_most(split_err, cfg.tol.algebraic));
        return out;
      });
}

SuiteReport bounds_suite(const RunConfig& cfg) {
  return run_trials("bounds",
                    {"upper bound", "lower bound", "commuting equality", "left invariance", "segment property"},
                    cfg.trials, [&](std::uint64_t t) {
                      Rng rng(trial_seed(cfg.seed, t));
                      const auto p = sample_pair(cfg.algebra, cfg.norm, PairFamily::generic, rng, 0.5);
                      const auto b = bounds_check(p.x, p.y, cfg.norm, cfg.tol);
                      std::vector<Outcome> out;
                      out.push_back(check(b.upper_ok, b.distance - b.norm_diff));
                      out.push_back(check(b.lower_ok, (2.0 / std::numbers::pi) * b.norm_diff - b.distance));
                      const auto c = sample_pair(cfg.algebra, cfg.norm, PairFamily::commuting, rng, 0.5);
                      const auto bc = bounds_check(c.x, c.y, cfg.norm, cfg.tol);
                      out.push_back(at_most(std::abs(bc.distance - bc.norm_diff), 1e-9));
                      const Mat k = random_frame(cfg.algebra, rng);
                      const Mat g = exp_map(p.x), h = exp_map(p.y);
                      const double d0 = dist_local(g, h, cfg.algebra, cfg.norm, cfg.tol);
                      const double d1 = dist_local(k * g, k * h, cfg.algebra, cfg.norm, cfg.tol);
                      out.push_back(at_most(std::abs(d0 - d1), cfg.tol.algebraic));
                      // delta(t) = g exp(t v): d(delta(s), delta(t)) = (t - s)|v|.
                      std::uniform_real_distribution<double> unit(0.0, 1.0);
                      double s = unit(rng), u = unit(rng);
                      if (s > u) std::swap(s, u);
                      const auto v = p.y - p.x;
                      const double seg = dist_local(g * exp_map(s * v), g * exp_map(u * v), cfg.algebra, cfg.norm,
                                                    cfg.tol);
                      out.push_back(at_most(std::abs(seg - (u - s) * norm(cfg.norm, v)), 1e-9));
                      return out;
                    });
}

SuiteReport bch_suite(const RunConfig& cfg) {
  return run_trials("bch", {"bch3 halving ratio", "z_r halving ratio", "bch3 vs log at r=1e-2"}, cfg.trials,
                    [&](std::uint64_t t) {
                      Rng rng(trial_seed(cfg.seed, t));
                      const auto x = random_element(cfg.algebra, rng);
                      const auto y = random_element(cfg.algebra, rng);
                      auto err = [&](double r) { return (bch_log(r * x, r * y) - bch3(r * x, r * y)).frobenius(); };
                      std::vector<Outcome> out;
                      const double e1 = err(0.1), e2 = err(0.05), e3 = err(0.025);
                      const double r1 = e2 / e1, r2 = e3 / e2;
                      // The window lower edge presumes a non-vanishing fourth-order term.
                      auto lower_edge = [](const auto& f, double e_coarse) {
                        return f(0.01) * 1e4 >= 0.5 * e_coarse ? 1.0 / 24 : 0.0;
                      };
                      const double lower = lower_edge(err, e1);
                      const bool ok = r1 >= lower && r1 <= 1.0 / 10 && r2 >= lower && r2 <= 1.0 / 10;
                      out.push_back(check(ok, std::max(std::abs(r1 - 1.0 / 16), std::abs(r2 - 1.0 / 16))));
                      const double ts[] = {0.0, 0.25, 0.5, 1.0};
                      const double tt = ts[t % 4];
                      auto zerr = [&](double r) {
                        const Mat g = exp_map((tt - 1) * r * x) * exp_map(r * y) * exp_map(-tt * r * x);
                        return (z_r(x, y, tt, r) - log_principal(g, cfg.algebra)).frobenius();
                      };
                      const double z1 = zerr(0.1), z2 = zerr(0.05), z3 = zerr(0.025);
                      const double q1 = z2 / z1, q2 = z3 / z2;
                      const double zlower = tt == 0.5 ? 0.0 : lower_edge(zerr, z1);
                      const bool zok = q1 >= zlower && q1 <= 1.0 / 10 && q2 >= zlower && q2 <= 1.0 / 10;
                      out.push_back(check(zok, std::max(std::abs(q1 - 1.0 / 16), std::abs(q2 - 1.0 / 16))));
                      out.push_back(at_most(err(1e-2), 1e-7));
                      return out;
                    });
}

SuiteReport theorem_b_suite(const RunConfig& cfg) {
  return run_trials("theorem-b",
                    {"closed vs def limit", "closed vs alt limit", "nonnegative", "swap identity",
                     "central reduction"},
                    cfg.trials, [&](std::uint64_t t) {
                      const auto p = trial_pair(cfg.algebra, cfg.norm, cfg.seed, t);
                      const double s = s_closed(p.x, p.y, cfg.norm, cfg.tol);
                      const double bound = std::max(1e-3, 1e-2 * s);
                      const double d = s_limit_def(p.x, p.y, cfg.norm, cfg.tol).value;
                      const double a = s_limit_alt(p.x, p.y, cfg.norm, cfg.tol).value;
                      std::vector<Outcome> out;
                      out.push_back(at_most(std::abs(s - d), bound));
                      out.push_back(at_most(std::abs(s - a), bound));
                      out.push_back(check(s >= -cfg.tol.subdiff, -s));
                      const double sw = s_closed_swapped(p.x, p.y, cfg.norm, cfg.tol);
                      out.push_back(at_most(std::abs(s - sw), cfg.tol.subdiff));
                      Outcome central;
                      if (s <= cfg.tol.subdiff) {
                        const auto xs = split_center(p.x).semisimple, ys = split_center(p.y).semisimple;
                        if ((ys - xs).frobenius() > 1e-12) {
                          const double sk = s_closed(xs, ys, cfg.norm, cfg.tol);
                          central = at_most(sk, 1e-8);
                        }
                      }
                      out.push_back(central);
                      return out;
                    });
}

SuiteReport roots_suite(const RunConfig& cfg) {
  auto rep = run_trials(
      "roots",
      {"biconditional", "adapted implies [x,z]=0", "strictly convex implies [x,v]=0", "adapted_check",
       "norming certified", "P_v svd vs eigenbasis", "phi([v,x]) = 0", "phi([x,[x,v]]) <= 0"},
      cfg.trials, [&](std::uint64_t t) {
        const auto p = trial_pair(cfg.algebra, cfg.norm, cfg.seed, t);
        const auto& x = p.x;
        const auto v = p.y - p.x;
        const auto nz = norming_adapted(cfg.norm, v, cfg.tol);
        std::vector<Outcome> out;
        const auto r = teonbis_check(x, v, nz, cfg.norm, cfg.tol);
        out.push_back(check(r.lhs_zero == r.rhs_zero, std::abs(r.lhs)));
        const double xz = bracket(x, nz.z).frobenius();
        out.push_back(r.lhs_zero ? at_most(xz, 1e-8) : Outcome{});
        const bool strict = cfg.norm.strictly_convex(cfg.algebra.n());
        out.push_back(strict && r.lhs_zero ? at_most(bracket(x, v).frobenius(), 1e-8) : Outcome{});
        out.push_back(check(adapted_check(nz.z, v, cfg.tol), 0));
        out.push_back(check(nz.certified, 0));
        out.push_back(at_most((proj_pv(v, x) - proj_pv_eigen(v, x, cfg.tol)).frobenius(), cfg.tol.subdiff));
        out.push_back(at_most(std::abs(trace_inner(nz.z, bracket(v, x))), cfg.tol.subdiff));
        out.push_back(at_most(r.lhs, cfg.tol.subdiff));
        return out;
      });
  if (cfg.algebra.family() == Family::su && cfg.algebra.n() >= 2) {
    const auto rd = su_root_data(cfg.algebra.n());
    CheckResult c{"root relations", 1, 0, 0, ""};
    for (const auto& root : rd.positive_roots)
      for (const auto& h : rd.cartan_basis) {
        const double a = RootData::alpha(root, h);
        c.worst = std::max({c.worst, (bracket(h, root.u) - a * root.v).frobenius(),
                            (bracket(h, root.v) + a * root.u).frobenius(),
                            (bracket(root.u, root.v) - root.h).frobenius()});
      }
    if (c.worst > cfg.tol.algebraic) c.failures = 1;
    rep.checks.push_back(c);
  }
  return rep;
}

SuiteReport flatness_suite(const RunConfig& cfg) {
  const bool su2_spectral = cfg.algebra == AlgebraSpec(Family::su, 2) && cfg.norm == NormSpec::spectral();
  return run_trials("flatness", {"implication lattice", "su(2) collapse", "commuting pairs flat"}, cfg.trials,
                    [&](std::uint64_t t) {
                      const auto p = trial_pair(cfg.algebra, cfg.norm, cfg.seed, t);
                      const auto r = classify(p.x, p.y, cfg.norm, cfg.tol, false);
                      std::vector<Outcome> out;
                      out.push_back(Outcome{r.implication_consistent, 0, r.violation});
                      out.push_back(su2_spectral ? check(r.cond[4] == r.cond[0], 0) : Outcome{});
                      bool all = true;
                      for (bool c : r.cond) all = all && c;
                      out.push_back(p.family == PairFamily::commuting ? check(all, 0) : Outcome{});
                      return out;
                    });
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIFINSLER_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) n = requested;
  }
  return std::max(n, 1);
}

SuiteReport run_trials(std::string suite, const std::vector<std::string>& checks, int trials,
                       const std::function<std::vector<Outcome>(std::uint64_t)>& fn) {
  struct Slot {
    std::vector<Outcome> outcomes;
    std::string error;
  };
  std::vector<Slot> slots(std::max(trials, 0));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t; (t = next.fetch_add(1)) < trials;) {
      try {
        slots[t].outcomes = fn(static_cast<std::uint64_t>(t));
      } catch (const std::exception& e) {
        slots[t].error = e.what();
      }
    }
  };
  const int workers = std::min(worker_count(), std::max(trials, 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  SuiteReport rep{std::move(suite), {}};
  for (const auto& name : checks) rep.checks.push_back({name, 0, 0, 0, ""});
  CheckResult errors{"exceptions", trials, 0, 0, ""};
  for (int t = 0; t < trials; ++t) {
    const auto& s = slots[t];
    if (!s.error.empty()) {
      if (errors.failures++ == 0) errors.first_failure = "trial " + std::to_string(t) + ": " + s.error;
      continue;
    }
    for (std::size_t c = 0; c < checks.size() && c < s.outcomes.size(); ++c) {
      auto& cr = rep.checks[c];
      const auto& o = s.outcomes[c];
      ++cr.trials;
      if (std::isfinite(o.residual)) cr.worst = std::max(cr.worst, o.residual);
      if (!o.ok && cr.failures++ == 0)
        cr.first_failure = "trial " + std::to_string(t) + (o.note.empty() ? "" : ": " + o.note);
    }
  }
  rep.checks.push_back(errors);
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"killing", "bounds", "bch", "theorem-b", "roots", "flatness", "all"};
  return names;
}

std::vector<SuiteReport> run_suite(std::string_view suite, const RunConfig& cfg) {
  if (suite == "killing") return {killing_suite(cfg)};
  if (suite == "bounds") return {bounds_suite(cfg)};
  if (suite == "bch") return {bch_suite(cfg)};
  if (suite == "theorem-b") return {theorem_b_suite(cfg)};
  if (suite == "roots") return {roots_suite(cfg)};
  if (suite == "flatness") return {flatness_suite(cfg)};
  if (suite == "all")
    return {killing_suite(cfg), bounds_suite(cfg), bch_suite(cfg), theorem_b_suite(cfg), roots_suite(cfg),
            flatness_suite(cfg)};
  throw ConfigError("unknown suite '" + std::string(suite) + "'");
}

Json to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}, {"worst", c.worst}};
    if (!c.first_failure.empty()) e["first_failure"] = c.first_failure;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace bifinsler

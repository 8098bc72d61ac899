// Command-line front end: verification suites and single computations.
//
// Exit codes: 0 success, 1 assertion failure, 2 configuration or parse error,
// 3 input outside the principal-logarithm chart.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/curvature.hpp"
#include "bifinsler/errors.hpp"
#include "bifinsler/flatness.hpp"
#include "bifinsler/io.hpp"
#include "bifinsler/metric.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/roots.hpp"
#include "bifinsler/sampling.hpp"
#include "bifinsler/verify.hpp"

using namespace bifinsler;

namespace {

struct Options {
  std::string algebra = "su:3";
  std::string norm = "spectral";
  std::uint64_t seed = 42;
  int trials = 500;
  std::vector<std::string> tol;
  std::string format = "json";
  std::string x_path, y_path;
  std::string suite = "all";
  std::string routes = "closed,def,alt";
};

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.algebra = AlgebraSpec::parse(o.algebra);
  cfg.norm = NormSpec::parse(o.norm);
  cfg.seed = o.seed;
  if (o.trials < 1) throw ConfigError("--trials must be positive");
  cfg.trials = o.trials;
  for (const auto& kv : o.tol) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + kv + "'");
    const std::string name = kv.substr(0, eq), value = kv.substr(eq + 1);
    double d = 0;
    std::size_t used = 0;
    try {
      d = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance value '" + value + "'");
    }
    if (used != value.size() || !(d > 0)) throw ConfigError("bad tolerance value '" + value + "'");
    if (!cfg.tol.set(name, d)) throw ConfigError("unknown tolerance '" + name + "'");
  }
  return cfg;
}

// Inputs from --x/--y when given, otherwise a seeded generic pair.
std::pair<AlgebraElement, AlgebraElement> inputs(const Options& o, const RunConfig& cfg) {
  if (o.x_path.empty() != o.y_path.empty()) throw ConfigError("--x and --y must be given together");
  if (!o.x_path.empty()) {
    auto x = load_element(o.x_path);
    auto y = load_element(o.y_path);
    if (!(x.spec() == cfg.algebra) || !(y.spec() == cfg.algebra))
      throw SpecMismatch("input matrices do not live in " + cfg.algebra.to_string());
    return {x, y};
  }
  Rng rng(cfg.seed);
  auto p = sample_pair(cfg.algebra, cfg.norm, PairFamily::generic, rng);
  return {p.x, p.y};
}

void emit(const std::string& kind, const Json& record, const Options& o) {
  if (o.format == "csv") std::cout << to_csv(kind, record);
  else std::cout << dump(record) << "\n";
}

Json base_record(const RunConfig& cfg) {
  return Json{{"algebra", cfg.algebra.to_string()}, {"norm", cfg.norm.to_string()}, {"seed", cfg.seed}};
}

int cmd_verify(const Options& o) {
  const auto cfg = make_config(o);
  const auto reports = run_suite(o.suite, cfg);
  bool ok = true;
  Json j = base_record(cfg);
  j["trials"] = cfg.trials;
  Json arr = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back(to_json(r));
  }
  j["suites"] = arr;
  j["passed"] = ok;
  emit("verify", j, o);
  return ok ? 0 : 1;
}

int cmd_distance(const Options& o) {
  const auto cfg = make_config(o);
  const auto [x, y] = inputs(o, cfg);
  Json j = base_record(cfg);
  j["bounds"] = to_json(bounds_check(x, y, cfg.norm, cfg.tol));
  emit("distance", j, o);
  return 0;
}

int cmd_curvature(const Options& o) {
  const auto cfg = make_config(o);
  const auto routes = Routes::parse(o.routes);
  const auto [x, y] = inputs(o, cfg);
  Json j = base_record(cfg);
  j["curvature"] = to_json(curvature_report(x, y, cfg.norm, routes, cfg.tol));
  emit("curvature", j, o);
  return 0;
}

int cmd_sec(const Options& o) {
  const auto cfg = make_config(o);
  const auto [x, y] = inputs(o, cfg);
  const auto rep = sec_plane(Plane(x, y), cfg.norm, {}, cfg.tol);
  Json j = base_record(cfg);
  j["sec"] = to_json(rep);
  emit("sec", j, o);
  return rep.sec_raw >= -1e-9 && rep.sec_normalized <= 1 + 1e-9 ? 0 : 1;
}

int cmd_flatness(const Options& o) {
  const auto cfg = make_config(o);
  const auto [x, y] = inputs(o, cfg);
  const auto rep = classify(x, y, cfg.norm, cfg.tol, false);
  Json j = base_record(cfg);
  j["flatness"] = to_json(rep);
  emit("flatness", j, o);
  return rep.implication_consistent ? 0 : 1;
}

int cmd_example_u3(const Options& o) {
  const auto ex = u3_example();
  const auto spectral = NormSpec::spectral(), trace = NormSpec::trace();
  const auto pvx = proj_pv(ex.v, ex.x);
  const auto rep = classify(ex.x, ex.y, spectral, {}, false);
  Json j;
  j["algebra"] = "u:3";
  j["norm"] = "spectral";
  j["v_spectral_norm"] = norm(spectral, ex.v);
  j["z_trace_norm"] = norm(trace, ex.z);
  j["z0_trace_norm"] = norm(trace, ex.z0);
  j["phi_v"] = trace_inner(ex.z, ex.v);
  j["phi0_v"] = trace_inner(ex.z0, ex.v);
  j["comm_pvx_z"] = bracket(pvx, ex.z).frobenius();
  j["comm_pvx_z0"] = bracket(pvx, ex.z0).frobenius();
  j["z_adapted"] = adapted_check(ex.z, ex.v);
  j["z0_adapted"] = adapted_check(ex.z0, ex.v);
  j["adapted_norming"] = to_json(norming_adapted(spectral, ex.v).z);
  j["flatness"] = to_json(rep);
  j["matrices"] = Json{{"x", to_json(ex.x)}, {"y", to_json(ex.y)}, {"v", to_json(ex.v)},
                       {"z", to_json(ex.z)}, {"z0", to_json(ex.z0)}, {"pv_x", to_json(pvx)}};
  emit("example-u3", j, o);
  const bool expected = !rep.cond[0] && !rep.cond[1] && !rep.cond[2] && rep.cond[3] && rep.cond[4];
  return expected && rep.implication_consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-invariant Finsler geometry of compact matrix groups"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--algebra", o.algebra, "u:n, su:n or so:n")->capture_default_str();
  app.add_option("--norm", o.norm, "spectral | trace | frobenius | schatten:p=<real> | kyfan:k=<int>")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "base seed")->capture_default_str();
  app.add_option("--trials", o.trials, "trials per suite")->capture_default_str();
  app.add_option("--tol", o.tol, "tolerance override name=value (algebraic, subdiff, distance, cluster, branch)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
  verify->add_option("--suite", o.suite, "killing | bounds | bch | theorem-b | roots | flatness | all")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();

  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--x", o.x_path, "JSON matrix file for x");
    sub->add_option("--y", o.y_path, "JSON matrix file for y");
  };
  auto* distance = app.add_subcommand("distance", "distance bounds for e^x, e^y");
  add_inputs(distance);
  auto* curvature = app.add_subcommand("curvature", "curvature form S(x, y)");
  add_inputs(curvature);
  curvature->add_option("--routes", o.routes, "comma-separated subset of closed,def,alt")->capture_default_str();
  auto* sec = app.add_subcommand("sec", "sectional curvature of span(x, y)");
  add_inputs(sec);
  auto* flatness = app.add_subcommand("flatness", "flatness conditions (1)-(5) for (x, y)");
  add_inputs(flatness);
  auto* example = app.add_subcommand("example-u3", "the u(3) example separating (1)-(3) from (4)-(5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*distance) return cmd_distance(o);
    if (*curvature) return cmd_curvature(o);
    if (*sec) return cmd_sec(o);
    if (*flatness) return cmd_flatness(o);
    if (*example) return cmd_example_u3(o);
  } catch (const BranchBoundary& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: the inputs leave the principal-logarithm chart; rescale x and y so that "
                 "max(|x|_inf, |y|_inf) <= 0.5\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidElement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

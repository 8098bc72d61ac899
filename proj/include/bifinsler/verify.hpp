#pragma once

// Seeded verification suites over the library's invariants.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bifinsler/algebra.hpp"
#include "bifinsler/io.hpp"
#include "bifinsler/norms.hpp"
#include "bifinsler/tolerances.hpp"

namespace bifinsler {

struct RunConfig {
  AlgebraSpec algebra{Family::su, 3};
  NormSpec norm = NormSpec::spectral();
  std::uint64_t seed = 42;
  int trials = 500;
  Tolerances tol;
};

struct CheckResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0;  // largest residual seen
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// One trial's verdict on one check.
struct Outcome {
  bool ok = true;
  double residual = 0;
  std::string note = {};
};

/// Runs fn(trial) for trial = 0..trials-1 on a thread pool and folds the
/// outcomes per check. An exception fails the trial's "exceptions" check.
/// The fold is independent of scheduling.
SuiteReport run_trials(std::string suite, const std::vector<std::string>& checks, int trials,
                       const std::function<std::vector<Outcome>(std::uint64_t)>& fn);

/// Worker count: BIFINSLER_THREADS if set, else the hardware concurrency.
int worker_count();

/// Suites: killing, bounds, bch, theorem-b, roots, flatness, all. Throws
/// ConfigError for an unknown suite.
std::vector<SuiteReport> run_suite(std::string_view suite, const RunConfig& cfg);

const std::vector<std::string>& suite_names();

Json to_json(const SuiteReport& r);

}  // namespace bifinsler

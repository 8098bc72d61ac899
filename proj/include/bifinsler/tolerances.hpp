#pragma once

#include <string>

namespace bifinsler {

// Tolerance ladder shared by every module. The CLI overrides entries by name
// (see set()).
struct Tolerances {
  double algebraic = 1e-10;  // bracket/identity residuals
  double subdiff = 1e-9;     // norming-functional values, lateral derivatives
  double distance = 1e-8;    // distance grids
  double cluster = 1e-9;     // eigenvalue clustering, relative to the spectral radius
  double branch = 1e-6;      // angular margin of the principal logarithm

  /// Sets a tolerance by name; returns false for an unknown name.
  bool set(const std::string& name, double value);
};

}  // namespace bifinsler

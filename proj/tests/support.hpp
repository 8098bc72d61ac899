#pragma once

#include <initializer_list>

#include "bifinsler/algebra.hpp"

namespace bifinsler::test {

inline constexpr cplx I{0.0, 1.0};

inline Mat pauli_x() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat pauli_y() { return (Mat(2, 2) << 0, -I, I, 0).finished(); }
inline Mat pauli_z() { return (Mat(2, 2) << 1, 0, 0, -1).finished(); }

/// i * diag(d) as an element of u(n).
inline AlgebraElement idiag(std::initializer_list<double> d, Family family = Family::u) {
  const int n = static_cast<int>(d.size());
  Mat m = Mat::Zero(n, n);
  int k = 0;
  for (double x : d) m(k, k) = I * x, ++k;
  return AlgebraElement(AlgebraSpec(family, n), m);
}

/// i * h for a Hermitian h.
inline AlgebraElement ih(const Mat& h, Family family = Family::u) {
  return AlgebraElement(AlgebraSpec(family, static_cast<int>(h.rows())), I * h);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace bifinsler::test

#pragma once

// Seeded pair generators for the verification sweeps.

#include <cstdint>
#include <string_view>
#include <utility>

#include "bifinsler/algebra.hpp"
#include "bifinsler/norms.hpp"

namespace bifinsler {

enum class PairFamily {
  generic,     // independent Gaussian elements
  commuting,   // simultaneously diagonalizable
  face_flat,   // x commutes with the adapted norming vector of y - x, [x,y] != 0 in general
  u3_conjugate // random unitary conjugate of the u(3) example (u(3) only)
};

std::string_view to_string(PairFamily f);

struct Pair {
  AlgebraElement x, y;
  PairFamily family;
};

/// A pair normalized so that max(|x|_inf, |y|_inf) = scale.
Pair sample_pair(const AlgebraSpec& algebra, const NormSpec& spec, PairFamily family, Rng& rng, double scale = 1.0);

/// Family cycles with the trial index: generic, commuting, face_flat and, on
/// u(3), u3_conjugate.
PairFamily family_for_trial(const AlgebraSpec& algebra, std::uint64_t trial);

/// Pair for one trial of a sweep, from trial_seed(seed, trial).
Pair trial_pair(const AlgebraSpec& algebra, const NormSpec& spec, std::uint64_t seed, std::uint64_t trial,
                double scale = 1.0);

/// Random element commuting with the diagonal of a random unitary frame;
/// for so(n) built from 2x2 rotation blocks.
AlgebraElement random_in_torus(const AlgebraSpec& algebra, const Mat& frame, Rng& rng);

/// A random frame for the algebra: unitary, real orthogonal for so(n).
Mat random_frame(const AlgebraSpec& algebra, Rng& rng);

}  // namespace bifinsler

#pragma once

// JSON and CSV serialization. Matrices use the schema
//   {"family": "u", "n": 3, "mat": [[[re, im], ...], ...]}
// with row-major nesting. Every real is written with 17 significant digits.

#include <json.hpp>

#include <string>
#include <string_view>

#include "bifinsler/algebra.hpp"
#include "bifinsler/curvature.hpp"
#include "bifinsler/flatness.hpp"
#include "bifinsler/metric.hpp"

namespace bifinsler {

using Json = nlohmann::ordered_json;

/// Throws ConfigError on schema violations and InvalidElement when the matrix
/// is not in the declared algebra.
AlgebraElement element_from_json(const Json& j);
AlgebraElement parse_element(std::string_view text);
AlgebraElement load_element(const std::string& path);

Json to_json(const AlgebraElement& x);
Json to_json(const CurvatureReport& r);
Json to_json(const SecReport& r);
Json to_json(const FlatnessReport& r);
Json to_json(const BoundsCheck& r);
Json to_json(const Extrapolation& e);

/// Serializes with 17 significant digits for every floating-point value.
/// Non-finite values become null.
std::string dump(const Json& j, int indent = 2);

/// One record as CSV: a versioned comment line, a header row of flattened
/// keys (nested keys joined by '.', array entries by index) and a value row.
std::string to_csv(std::string_view kind, const Json& record);

/// Current CSV layout version.
inline constexpr int kCsvVersion = 1;

}  // namespace bifinsler

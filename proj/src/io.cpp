#include "bifinsler/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "bifinsler/errors.hpp"

namespace bifinsler {

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

void emit(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(indent * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(indent * depth, ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad + quoted(it.key()) + sep;
        emit(it.value(), indent, depth + 1, out);
      }
      out += close + '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        emit(e, indent, depth + 1, out);
      }
      out += (flat ? "" : close) + ']';
      return;
    }
    case Json::value_t::number_float: out += number(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), keys, values);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), keys, values);
  } else {
    keys.push_back(prefix);
    if (j.is_number_float()) values.push_back(number(j.get<double>()));
    else if (j.is_string()) values.push_back(j.get<std::string>());
    else if (j.is_null()) values.push_back("");
    else values.push_back(j.dump());
  }
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

AlgebraElement element_from_json(const Json& j) {
  try {
    const auto family = j.at("family").get<std::string>();
    const int n = j.at("n").get<int>();
    const AlgebraSpec spec = AlgebraSpec::parse(family + ":" + std::to_string(n));
    const auto& rows = j.at("mat");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ConfigError("mat must have n rows");
    Mat m(n, n);
    for (int r = 0; r < n; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw ConfigError("mat rows must have n entries");
      for (int c = 0; c < n; ++c) {
        const auto& e = row[c];
        if (!e.is_array() || e.size() != 2) throw ConfigError("matrix entries must be [re, im]");
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    }
    return AlgebraElement(spec, std::move(m));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad matrix JSON: ") + e.what());
  }
}

AlgebraElement parse_element(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  return element_from_json(j);
}

AlgebraElement load_element(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_element(ss.str());
}

Json to_json(const AlgebraElement& x) {
  const auto spec = x.spec().to_string();
  Json j;
  j["family"] = spec.substr(0, spec.find(':'));
  j["n"] = x.n();
  Json rows = Json::array();
  for (int r = 0; r < x.n(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < x.n(); ++c) row.push_back(Json::array({x.mat()(r, c).real(), x.mat()(r, c).imag()}));
    rows.push_back(row);
  }
  j["mat"] = rows;
  return j;
}

Json to_json(const Extrapolation& e) {
  return Json{{"value", e.value}, {"residual", e.residual}, {"nodes", e.nodes}, {"converged", e.converged}};
}

Json to_json(const CurvatureReport& r) {
  Json j;
  j["s_closed"] = optional_number(r.s_closed);
  j["s_limit_def"] = optional_number(r.s_limit_def);
  j["s_limit_alt"] = optional_number(r.s_limit_alt);
  j["agreement"] = r.agreement;
  j["def_nodes"] = r.def_diag ? to_json(*r.def_diag) : Json(nullptr);
  j["alt_nodes"] = r.alt_diag ? to_json(*r.alt_diag) : Json(nullptr);
  return j;
}

Json to_json(const SecReport& r) {
  return Json{{"sec_raw", r.sec_raw},
              {"c", r.c},
              {"sec_rescaled", r.sec_rescaled},
              {"c_nested", r.c_nested},
              {"sec_normalized", r.sec_normalized},
              {"theta", r.theta},
              {"psi", r.psi}};
}

Json to_json(const FlatnessReport& r) {
  Json j;
  j["norm"] = r.spec.to_string();
  for (int i = 0; i < 5; ++i) j["cond" + std::to_string(i + 1)] = r.cond[i];
  j["implication_consistent"] = r.implication_consistent;
  Json res;
  for (int i = 0; i < 5; ++i) res["cond" + std::to_string(i + 1)] = r.residual[i];
  j["residuals"] = res;
  j["commutator"] = r.commutator;
  if (!r.violation.empty()) j["violation"] = r.violation;
  return j;
}

Json to_json(const BoundsCheck& r) {
  return Json{{"distance", r.distance}, {"norm_diff", r.norm_diff}, {"ratio", r.ratio},
              {"upper_ok", r.upper_ok}, {"lower_ok", r.lower_ok}};
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

std::string to_csv(std::string_view kind, const Json& record) {
  std::vector<std::string> keys, values;
  flatten(record, "", keys, values);
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ',';
      const bool needs_quotes = xs[i].find_first_of(",\"\n") != std::string::npos;
      if (!needs_quotes) {
        s += xs[i];
        continue;
      }
      s += '"';
      for (char c : xs[i]) s += c == '"' ? std::string("\"\"") : std::string(1, c);
      s += '"';
    }
    return s;
  };
  return "# bifinsler-csv v" + std::to_string(kCsvVersion) + " " + std::string(kind) + "\n" + join(keys) + "\n" +
         join(values) + "\n";
}

}  // namespace bifinsler

#pragma once

// JSON formats: algebra files, extension files, decomposition data and
// reports. Rationals are JSON strings "p/q"; bracket-like tensors are sparse
// lists of [i, j, k, "c"] with 0-based indices and i < j. Parsing is strict:
// unknown keys, wrong shapes and out-of-range indices are rejected with a
// ParseError carrying a stable kind and a JSON pointer.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "homlie/core.hpp"
#include "homlie/doubleext.hpp"
#include "homlie/report.hpp"
#include "homlie/structure.hpp"

namespace homlie::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct AlgebraFile {
  HomLieAlgebra algebra;
  std::optional<Matrix> metric;
  std::vector<std::string> labels;

  friend bool operator==(const AlgebraFile&, const AlgebraFile&) = default;
};

// ---------------------------------------------------------------- writing

inline json scalar_json(const Scalar& s) { return to_string(s); }

inline json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

inline json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row_vector(r)));
  return out;
}

inline json tensor_json(const StructureTensor& t) {
  json out = json::array();
  for (const auto& e : t.entries()) out.push_back(json::array({e.i, e.j, e.k, to_string(e.c)}));
  return out;
}

/// Nonzero entries [a, b, o, "c"] over all ordered pairs (a, b).
inline json tensor3_json(const Tensor3& t) {
  json out = json::array();
  for (std::size_t a = 0; a < t.left_dim(); ++a)
    for (std::size_t b = 0; b < t.right_dim(); ++b)
      for (std::size_t o = 0; o < t.out_dim(); ++o)
        if (sgn(t.at(o, a, b)) != 0) out.push_back(json::array({a, b, o, to_string(t.at(o, a, b))}));
  return out;
}

inline json subspace_json(const Subspace& s) { return matrix_json(s.basis()); }

inline json matrices_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json algebra_json(const HomLieAlgebra& g, const std::optional<Matrix>& metric = std::nullopt,
                         const std::vector<std::string>& labels = {}) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = g.dim();
  j["bracket"] = tensor_json(g.bracket());
  j["twist"] = matrix_json(g.twist());
  if (metric) j["metric"] = matrix_json(*metric);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

inline std::string serialize_algebra(const AlgebraFile& a) { return dump(algebra_json(a.algebra, a.metric, a.labels)); }
inline std::string serialize_algebra(const HomLieAlgebra& g) { return dump(algebra_json(g)); }
inline std::string serialize_algebra(const QuadraticHomLieAlgebra& q, const std::vector<std::string>& labels = {}) {
  return dump(algebra_json(q.algebra(), q.gram(), labels));
}

inline json extension_json(const DoubleExtensionData& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["s_dim"] = d.s_dim;
  j["h_dim"] = d.h_dim;
  j["bracket_s"] = tensor_json(d.bracket_s);
  j["bracket_h"] = tensor_json(d.bracket_h);
  j["theta"] = matrix_json(d.theta);
  j["gram_h"] = matrix_json(d.gram_h);
  j["phi"] = matrix_json(d.phi);
  j["varphi"] = matrix_json(d.varphi);
  j["rho"] = matrices_json(d.rho);
  j["tau"] = matrices_json(d.tau);
  j["mu"] = tensor_json(d.mu);
  return j;
}

inline std::string serialize_extension(const DoubleExtensionData& d) { return dump(extension_json(d)); }

inline json decomposition_json(const DecompositionData& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["s_dim"] = d.s_dim();
  j["h_dim"] = d.h_dim();
  j["maximal_ideal"] = subspace_json(d.maximal_ideal);
  j["iso_radical"] = subspace_json(d.iso_radical);
  j["h_space"] = subspace_json(d.h_space);
  j["s_space"] = subspace_json(d.s_space);
  j["s_basis"] = matrix_json(d.s_basis.transpose());
  j["h_basis"] = matrix_json(d.h_basis.transpose());
  j["dual_basis"] = matrix_json(d.dual_basis.transpose());
  j["xi"] = matrix_json(d.xi);
  j["bracket_s"] = tensor_json(d.bracket_s);
  j["bracket_h"] = tensor_json(d.bracket_h);
  j["theta"] = matrix_json(d.theta);
  j["gram_h"] = matrix_json(d.gram_h);
  j["phi"] = matrix_json(d.phi);
  j["varphi"] = matrix_json(d.varphi);
  j["rho"] = matrices_json(d.rho);
  j["tau"] = matrices_json(d.tau);
  j["sigma"] = matrices_json(d.sigma);
  j["gamma"] = tensor3_json(d.gamma);
  j["lambda"] = tensor3_json(d.lambda);
  j["mu"] = tensor_json(d.mu);
  j["L"] = matrix_json(d.L);
  return j;
}

inline json witness_json(const Witness& w) {
  json j;
  j["indices"] = w.indices;
  j["defect"] = vector_json(w.defect);
  j["note"] = w.note;
  return j;
}

inline json report_json(const AlgebraReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["informational"] = c.informational;
    if (c.witness) e["witness"] = witness_json(*c.witness);
    checks.push_back(std::move(e));
  }
  json j;
  j["passed"] = r.passed();
  j["checks"] = std::move(checks);
  j["quantities"] = json::object();
  for (const auto& [k, v] : r.quantities) j["quantities"][k] = v;
  return j;
}

inline json error_json(const std::exception& e) {
  json j;
  j["error"] = e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["code"] = "parse";
    j["kind"] = pe->kind();
    j["location"] = pe->location();
  } else if (const auto* he = dynamic_cast<const Error*>(&e)) {
    j["code"] = to_string(he->code());
  } else {
    j["code"] = "internal";
  }
  return j;
}

// ---------------------------------------------------------------- reading

namespace detail {

inline std::string child(const std::string& loc, const std::string& key) { return loc + "/" + key; }
inline std::string child(const std::string& loc, std::size_t i) { return loc + "/" + std::to_string(i); }

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid_json", std::string("invalid JSON: ") + e.what(), "");
  }
}

inline void expect_object(const json& j, const std::string& loc) {
  if (!j.is_object()) throw ParseError("type_mismatch", "expected an object", loc);
}

inline const json& expect_array(const json& j, const std::string& loc) {
  if (!j.is_array()) throw ParseError("type_mismatch", "expected an array", loc);
  return j;
}

/// Rejects keys outside `allowed` and requires every key in `required`.
inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::set<std::string>& required,
                       const std::string& loc) {
  expect_object(j, loc);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ParseError("unknown_field", "unknown field \"" + k + "\"", child(loc, k));
  for (const auto& k : required)
    if (!j.contains(k)) throw ParseError("missing_field", "missing field \"" + k + "\"", child(loc, k));
}

inline void check_schema(const json& j, const std::string& loc) {
  const json& v = j.at("schema_version");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw ParseError("unsupported_schema", "schema_version must be \"1\"", child(loc, "schema_version"));
}

inline std::size_t read_count(const json& j, const std::string& loc) {
  if (!j.is_number_integer()) throw ParseError("type_mismatch", "expected a non-negative integer", loc);
  if (!j.is_number_unsigned()) throw ParseError("index_out_of_range", "expected a non-negative integer", loc);
  return j.get<std::size_t>();
}

inline std::size_t read_index(const json& j, std::size_t bound, const std::string& loc) {
  std::size_t i = read_count(j, loc);
  if (i >= bound)
    throw ParseError("index_out_of_range", "index " + std::to_string(i) + " out of range [0, " + std::to_string(bound) + ")",
                     loc);
  return i;
}

inline Scalar read_scalar(const json& j, const std::string& loc) {
  if (!j.is_string()) throw ParseError("type_mismatch", "rationals must be JSON strings", loc);
  return parse_scalar(j.get<std::string>(), loc);
}

inline Matrix read_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& loc) {
  expect_array(j, loc);
  if (j.size() != rows)
    throw ParseError("shape_mismatch", "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()), loc);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rl = child(loc, r);
    expect_array(j[r], rl);
    if (j[r].size() != cols)
      throw ParseError("shape_mismatch",
                       "expected " + std::to_string(cols) + " columns, got " + std::to_string(j[r].size()), rl);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = read_scalar(j[r][c], child(rl, c));
  }
  return m;
}

inline std::vector<Matrix> read_matrices(const json& j, std::size_t count, std::size_t rows, std::size_t cols,
                                         const std::string& loc) {
  expect_array(j, loc);
  if (j.size() != count)
    throw ParseError("shape_mismatch", "expected " + std::to_string(count) + " matrices, got " + std::to_string(j.size()),
                     loc);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(read_matrix(j[i], rows, cols, child(loc, i)));
  return out;
}

inline StructureTensor read_tensor(const json& j, std::size_t dim, std::size_t out_dim, const std::string& loc) {
  expect_array(j, loc);
  StructureTensor t(dim, out_dim);
  std::set<std::array<std::size_t, 3>> seen;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string el = child(loc, e);
    const json& entry = j[e];
    if (!entry.is_array() || entry.size() != 4)
      throw ParseError("type_mismatch", "bracket entries are [i, j, k, \"c\"]", el);
    std::size_t i = read_index(entry[0], dim, child(el, 0));
    std::size_t jj = read_index(entry[1], dim, child(el, 1));
    std::size_t k = read_index(entry[2], out_dim, child(el, 2));
    if (i >= jj) throw ParseError("bracket_order", "bracket indices must satisfy i<j", el);
    Scalar c = read_scalar(entry[3], child(el, 3));
    if (!seen.insert({i, jj, k}).second) throw ParseError("duplicate_entry", "repeated bracket entry", el);
    t.add(i, jj, k, c);
  }
  return t;
}

inline Matrix read_symmetric(const json& j, std::size_t n, const std::string& loc) {
  Matrix m = read_matrix(j, n, n, loc);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (m(r, c) != m(c, r))
        throw ParseError("non_symmetric_metric", "metric is not symmetric", child(child(loc, r), c));
  return m;
}

}  // namespace detail

inline AlgebraFile parse_algebra(std::string_view text) {
  using namespace detail;
  json j = parse_json(text);
  check_keys(j, {"schema_version", "dim", "bracket", "twist", "metric", "labels"},
             {"schema_version", "dim", "bracket", "twist"}, "");
  check_schema(j, "");
  const std::size_t n = read_count(j["dim"], "/dim");
  AlgebraFile a{HomLieAlgebra(read_tensor(j["bracket"], n, n, "/bracket"), read_matrix(j["twist"], n, n, "/twist")),
                std::nullopt,
                {}};
  if (j.contains("metric")) a.metric = read_symmetric(j["metric"], n, "/metric");
  if (j.contains("labels")) {
    const json& l = expect_array(j["labels"], "/labels");
    if (l.size() != n) throw ParseError("shape_mismatch", "expected one label per basis vector", "/labels");
    for (std::size_t i = 0; i < n; ++i) {
      if (!l[i].is_string()) throw ParseError("type_mismatch", "labels must be strings", child("/labels", i));
      a.labels.push_back(l[i].get<std::string>());
    }
  }
  return a;
}

/// Quadratic view of a parsed file; throws ParseError if the metric is absent.
/// With `checked`, a degenerate metric raises degenerate_metric.
inline QuadraticHomLieAlgebra quadratic_of(const AlgebraFile& a, bool checked = true) {
  if (!a.metric) throw ParseError("missing_field", "missing field \"metric\"", "/metric");
  if (checked) return QuadraticHomLieAlgebra(a.algebra, *a.metric);
  return QuadraticHomLieAlgebra(a.algebra, *a.metric, unchecked);
}

inline DoubleExtensionData parse_extension(std::string_view text) {
  using namespace detail;
  json j = parse_json(text);
  const std::set<std::string> keys{"schema_version", "s_dim", "h_dim", "bracket_s", "bracket_h", "theta",
                                   "gram_h",         "phi",   "varphi", "rho",      "tau",       "mu"};
  check_keys(j, keys, keys, "");
  check_schema(j, "");
  DoubleExtensionData d;
  d.s_dim = read_count(j["s_dim"], "/s_dim");
  d.h_dim = read_count(j["h_dim"], "/h_dim");
  const std::size_t s = d.s_dim, h = d.h_dim;
  d.bracket_s = read_tensor(j["bracket_s"], s, s, "/bracket_s");
  d.bracket_h = read_tensor(j["bracket_h"], h, h, "/bracket_h");
  d.theta = read_matrix(j["theta"], h, h, "/theta");
  d.gram_h = read_symmetric(j["gram_h"], h, "/gram_h");
  d.phi = read_matrix(j["phi"], h, s, "/phi");
  d.varphi = read_matrix(j["varphi"], s, s, "/varphi");
  d.rho = read_matrices(j["rho"], s, h, h, "/rho");
  d.tau = read_matrices(j["tau"], s, s, h, "/tau");
  d.mu = read_tensor(j["mu"], s, s, "/mu");
  return d;
}

inline AlgebraReport parse_report(std::string_view text) {
  using namespace detail;
  json j = parse_json(text);
  check_keys(j, {"passed", "checks", "quantities"}, {"passed", "checks", "quantities"}, "");
  AlgebraReport r;
  const json& checks = expect_array(j["checks"], "/checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string loc = child("/checks", i);
    const json& c = checks[i];
    check_keys(c, {"name", "passed", "informational", "witness"}, {"name", "passed", "informational"}, loc);
    if (!c["name"].is_string() || !c["passed"].is_boolean() || !c["informational"].is_boolean())
      throw ParseError("type_mismatch", "malformed check entry", loc);
    CheckResult cr{c["name"].get<std::string>(), c["passed"].get<bool>(), std::nullopt, c["informational"].get<bool>()};
    if (c.contains("witness")) {
      const std::string wl = child(loc, "witness");
      const json& w = c["witness"];
      check_keys(w, {"indices", "defect", "note"}, {"indices", "defect", "note"}, wl);
      Witness wit;
      const json& idx = expect_array(w["indices"], child(wl, "indices"));
      for (std::size_t k = 0; k < idx.size(); ++k) wit.indices.push_back(read_count(idx[k], child(child(wl, "indices"), k)));
      const json& def = expect_array(w["defect"], child(wl, "defect"));
      for (std::size_t k = 0; k < def.size(); ++k) wit.defect.push_back(read_scalar(def[k], child(child(wl, "defect"), k)));
      if (!w["note"].is_string()) throw ParseError("type_mismatch", "note must be a string", child(wl, "note"));
      wit.note = w["note"].get<std::string>();
      cr.witness = std::move(wit);
    }
    r.add(std::move(cr));
  }
  expect_object(j["quantities"], "/quantities");
  for (const auto& [k, v] : j["quantities"].items()) r.quantities[k] = read_count(v, child("/quantities", k));
  if (!j["passed"].is_boolean() || j["passed"].get<bool>() != r.passed())
    throw ParseError("inconsistent_report", "\"passed\" disagrees with the checks", "/passed");
  return r;
}

}  // namespace homlie::io

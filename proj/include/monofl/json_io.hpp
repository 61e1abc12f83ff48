#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "monofl/error.hpp"
#include "monofl/filtration.hpp"
#include "monofl/gkz.hpp"
#include "monofl/matrix.hpp"
#include "monofl/monodromic.hpp"
#include "monofl/rational.hpp"
#include "monofl/report.hpp"
#include "monofl/subspace.hpp"

namespace monofl {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::parse, std::string("missing member '") + key + "'");
  return j.at(key);
}

inline long member_long(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer())
    fail(ErrorKind::parse, std::string("member '") + key + "' must be an integer");
  return v.get<long>();
}

inline bool member_bool(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_boolean())
    fail(ErrorKind::parse, std::string("member '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline Rational member_rational(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string())
    fail(ErrorKind::parse, std::string("member '") + key + "' must be a rational string");
  return parse_rational(v.get<std::string>());
}

}  // namespace detail

inline Json matrix_to_json(const RatMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long k = 0; k < m.cols(); ++k) row.push_back(to_string(m.at(i, k)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline RatMatrix matrix_from_json(const Json& j) {
  long rows = detail::member_long(j, "rows");
  long cols = detail::member_long(j, "cols");
  if (rows < 0 || cols < 0) fail(ErrorKind::parse, "matrix shape must be nonnegative");
  const Json& entries = detail::member(j, "entries");
  if (!entries.is_array() || static_cast<long>(entries.size()) != rows)
    fail(ErrorKind::parse, "entries must hold one array per row");
  RatMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const Json& row = entries[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      fail(ErrorKind::parse, "row " + std::to_string(i) + " has the wrong length");
    for (long k = 0; k < cols; ++k) {
      const Json& cell = row[static_cast<size_t>(k)];
      if (!cell.is_string()) fail(ErrorKind::parse, "matrix entries must be rational strings");
      m.at(i, k) = parse_rational(cell.get<std::string>());
    }
  }
  return m;
}

inline Json filtration_to_json(const Filtration& f) {
  Json j;
  j["ambient"] = f.ambient();
  Json jumps = Json::array();
  for (const auto& [index, sub] : f.jumps()) {
    Json one;
    one["index"] = index;
    one["basis"] = matrix_to_json(sub.basis());
    jumps.push_back(std::move(one));
  }
  j["jumps"] = std::move(jumps);
  return j;
}

inline Filtration filtration_from_json(const Json& j) {
  long ambient = detail::member_long(j, "ambient");
  const Json& jumps = detail::member(j, "jumps");
  if (!jumps.is_array()) fail(ErrorKind::parse, "jumps must be an array");
  std::map<long, Subspace> values;
  for (const Json& one : jumps) {
    long index = detail::member_long(one, "index");
    if (values.count(index)) fail(ErrorKind::parse, "duplicate jump index " + std::to_string(index));
    RatMatrix basis = matrix_from_json(detail::member(one, "basis"));
    if (basis.cols() != ambient && basis.rows() != 0)
      fail(ErrorKind::parse, "jump basis does not live in the ambient space");
    values[index] = basis.rows() == 0 ? Subspace::zero(ambient) : Subspace::from_rows(basis);
  }
  return Filtration::from_jumps(ambient, values);
}

inline Json module_to_json(const MonodromicModule& m) {
  Json j;
  j["r"] = m.r;
  j["denom"] = m.denom;
  j["chi_min"] = to_string(m.chi_min);
  j["low_flag"] = m.low_flag;
  j["high_flag"] = m.high_flag;
  Json spaces = Json::array();
  for (const FilteredSpace& s : m.spaces) {
    Json one;
    one["dim"] = s.dim;
    one["f"] = filtration_to_json(s.F);
    one["w"] = filtration_to_json(s.W);
    spaces.push_back(std::move(one));
  }
  j["spaces"] = std::move(spaces);
  auto maps_to_json = [](const std::vector<std::vector<RatMatrix>>& maps) {
    Json out = Json::array();
    for (const auto& per_var : maps) {
      Json row = Json::array();
      for (const RatMatrix& m2 : per_var) row.push_back(matrix_to_json(m2));
      out.push_back(std::move(row));
    }
    return out;
  };
  j["zmaps"] = maps_to_json(m.zmaps);
  j["dmaps"] = maps_to_json(m.dmaps);
  return j;
}

inline MonodromicModule module_from_json(const Json& j) {
  MonodromicModule m;
  m.r = detail::member_long(j, "r");
  m.denom = detail::member_long(j, "denom");
  m.chi_min = detail::member_rational(j, "chi_min");
  m.low_flag = detail::member_bool(j, "low_flag");
  m.high_flag = detail::member_bool(j, "high_flag");
  const Json& spaces = detail::member(j, "spaces");
  if (!spaces.is_array()) fail(ErrorKind::parse, "spaces must be an array");
  for (const Json& one : spaces) {
    FilteredSpace s;
    s.dim = detail::member_long(one, "dim");
    s.F = filtration_from_json(detail::member(one, "f"));
    s.W = filtration_from_json(detail::member(one, "w"));
    m.spaces.push_back(std::move(s));
  }
  auto maps_from_json = [](const Json& arr, const char* what) {
    if (!arr.is_array()) fail(ErrorKind::parse, std::string(what) + " must be an array");
    std::vector<std::vector<RatMatrix>> out;
    for (const Json& per_var : arr) {
      if (!per_var.is_array())
        fail(ErrorKind::parse, std::string(what) + " must hold one array per variable");
      std::vector<RatMatrix> row;
      for (const Json& m2 : per_var) row.push_back(matrix_from_json(m2));
      out.push_back(std::move(row));
    }
    return out;
  };
  m.zmaps = maps_from_json(detail::member(j, "zmaps"), "zmaps");
  m.dmaps = maps_from_json(detail::member(j, "dmaps"), "dmaps");
  return m;
}

struct RmfInput {
  RatMatrix n = RatMatrix(0, 0);
  Filtration l = Filtration::from_jumps(0, {});
  long center = 0;
};

inline RmfInput rmf_input_from_json(const Json& j) {
  RmfInput in;
  in.n = matrix_from_json(detail::member(j, "n"));
  in.l = filtration_from_json(detail::member(j, "l"));
  in.center = detail::member_long(j, "center");
  return in;
}

inline Json rmf_input_to_json(const RmfInput& in) {
  Json j;
  j["n"] = matrix_to_json(in.n);
  j["l"] = filtration_to_json(in.l);
  j["center"] = in.center;
  return j;
}

inline Json report_to_json(const Report& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  return j;
}

inline Json gkz_to_json(const GkzSystem& sys) {
  Json j;
  Json a;
  a["rows"] = sys.a.rows();
  a["cols"] = sys.a.cols();
  Json entries = Json::array();
  for (long i = 0; i < sys.a.rows(); ++i) {
    Json row = Json::array();
    for (long k = 0; k < sys.a.cols(); ++k) row.push_back(to_string(sys.a.at(i, k)));
    entries.push_back(std::move(row));
  }
  a["entries"] = std::move(entries);
  j["matrix"] = std::move(a);
  Json beta = Json::array();
  for (const Rational& b : sys.beta) beta.push_back(to_string(b));
  j["beta"] = std::move(beta);
  Json basis = Json::array();
  for (const auto& l : sys.lattice_basis) {
    Json vec = Json::array();
    for (const Int& v : l) vec.push_back(to_string(v));
    basis.push_back(std::move(vec));
  }
  j["lattice_basis"] = std::move(basis);
  Json boxes = Json::array();
  for (const WeylElement& b : sys.boxes) boxes.push_back(print_weyl(b));
  j["boxes"] = std::move(boxes);
  Json eulers = Json::array();
  for (const WeylElement& e : sys.eulers) eulers.push_back(print_weyl(e));
  j["eulers"] = std::move(eulers);
  Json flags;
  flags["homogeneous"] = sys.flags.homogeneous;
  flags["pointed"] = sys.flags.pointed;
  flags["columns_span"] = sys.flags.columns_span;
  j["flags"] = std::move(flags);
  return j;
}

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::parse, "malformed json");
  return j;
}

}  // namespace monofl

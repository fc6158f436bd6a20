#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "toric/matrix.hpp"
#include "toric/point_configuration.hpp"
#include "toric/polytope.hpp"

namespace toric {

// Anything wrong with an input file: unreadable, unparsable, or
// schema-invalid. The message names the offending field.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One input file: either a bare point configuration ("points") or a polytope
// given by generators and an optional relative lattice basis ("polytope").
struct InputDocument {
  std::string kind;
  std::size_t dimension = 0;
  std::vector<IntVec> points;
  std::optional<RatMatrix> lattice_basis;
  std::optional<std::string> name;
};

namespace io {

using nlohmann::json;

inline std::string int_string(const Int& x) { return x.str(); }

inline std::string rat_string(const Rat& x) {
  const Int num = boost::multiprecision::numerator(x);
  const Int den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Int parse_integer(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start)
      throw InputError(field + ": malformed integer \"" + s + "\"");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw InputError(field + ": malformed integer \"" + s + "\"");
    return Int(s);
  }
  throw InputError(field + ": expected an integer or a decimal string");
}

inline Rat parse_rational(const json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned() || !j.is_string())
    return Rat(parse_integer(j, field));
  const std::string s = j.get<std::string>();
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(j, field));
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  Int n = parse_integer(json(num), field);
  Int d = parse_integer(json(den), field);
  if (d == 0) throw InputError(field + ": zero denominator in \"" + s + "\"");
  return Rat(n) / Rat(d);
}

inline IntVec parse_integer_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array");
  IntVec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_integer(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline IntMatrix parse_integer_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of rows");
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(
        parse_integer_vector(j[i], field + "[" + std::to_string(i) + "]"));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const IntVec& r : rows)
    if (r.size() != cols) throw InputError(field + ": ragged matrix");
  return IntMatrix::from_rows(cols, rows);
}

inline json to_json(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_string(x));
  return a;
}

inline json to_json(const std::vector<IntVec>& pts) {
  json a = json::array();
  for (const IntVec& p : pts) a.push_back(to_json(p));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline json divisors_json(const std::vector<Int>& div) {
  json a = json::array();
  for (const Int& d : div) a.push_back(int_string(d));
  return a;
}

}  // namespace io

inline InputDocument parse_input_document(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("document: expected a JSON object");
  InputDocument doc;
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw InputError("kind: missing or not a string");
  doc.kind = j.at("kind").get<std::string>();
  if (doc.kind != "points" && doc.kind != "polytope")
    throw InputError("kind: expected \"points\" or \"polytope\"");
  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty())
    throw InputError("points: missing or empty");
  const auto& pts = j.at("points");
  for (std::size_t i = 0; i < pts.size(); ++i)
    doc.points.push_back(
        io::parse_integer_vector(pts[i], "points[" + std::to_string(i) + "]"));
  doc.dimension = doc.points[0].size();
  if (doc.dimension == 0) throw InputError("points: dimension must be at least 1");
  for (const IntVec& p : doc.points)
    if (p.size() != doc.dimension)
      throw InputError("points: vectors of unequal length");
  if (j.contains("lattice_basis") && !j.at("lattice_basis").is_null()) {
    if (doc.kind != "polytope")
      throw InputError("lattice_basis: only valid for polytope documents");
    const auto& lb = j.at("lattice_basis");
    if (!lb.is_array() || lb.size() != doc.dimension)
      throw InputError("lattice_basis: expected a " +
                       std::to_string(doc.dimension) + "-row matrix");
    RatMatrix basis(doc.dimension, doc.dimension);
    for (std::size_t i = 0; i < doc.dimension; ++i) {
      const auto& row = lb[i];
      if (!row.is_array() || row.size() != doc.dimension)
        throw InputError("lattice_basis[" + std::to_string(i) +
                         "]: expected a row of length " +
                         std::to_string(doc.dimension));
      for (std::size_t k = 0; k < doc.dimension; ++k)
        basis(i, k) = io::parse_rational(
            row[k], "lattice_basis[" + std::to_string(i) + "][" +
                        std::to_string(k) + "]");
    }
    doc.lattice_basis = std::move(basis);
  }
  if (j.contains("name") && !j.at("name").is_null()) {
    if (!j.at("name").is_string()) throw InputError("name: expected a string");
    doc.name = j.at("name").get<std::string>();
  }
  return doc;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

inline InputDocument load_input_document(const std::string& path) {
  InputDocument doc = parse_input_document(load_json_file(path));
  if (!doc.name) doc.name = path;
  return doc;
}

inline AmbientLattice document_lattice(const InputDocument& doc) {
  if (!doc.lattice_basis) return AmbientLattice(doc.dimension);
  try {
    return AmbientLattice(*doc.lattice_basis);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("lattice_basis: ") + e.what());
  }
}

inline LatticePolytope to_polytope(const InputDocument& doc) {
  if (doc.kind != "polytope")
    throw InputError("kind: expected \"polytope\" for this command");
  try {
    return LatticePolytope(document_lattice(doc), doc.points);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("points: ") + e.what());
  }
}

// The point configuration a document denotes: its own points for "points"
// documents, the polytope's lattice points (in lattice coordinates) for
// "polytope" documents.
inline PointConfiguration to_configuration(const InputDocument& doc) {
  if (doc.kind == "polytope") return to_polytope(doc).lattice_points();
  return PointConfiguration(doc.dimension, doc.points);
}

}  // namespace toric

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "centra/equivariance.hpp"
#include "centra/errors.hpp"
#include "centra/exppoly.hpp"
#include "centra/matrix.hpp"
#include "centra/normal_form.hpp"
#include "centra/poly.hpp"
#include "centra/superposition.hpp"
#include "centra/vector_field.hpp"

namespace centra {

using Json = nlohmann::ordered_json;

/// Rationals travel as "p/q" strings so nothing is ever rounded.
inline Json to_json(const Rational& r) { return rational_str(r); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string())
    throw ParseError("expected a rational as a string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

inline Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected a matrix as a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  if (cols == 0) throw ParseError("matrix rows must be non-empty arrays");
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ParseError("matrix rows must all have the same length");
    for (int c = 0; c < cols; ++c) m.at(i, c) = rational_from_json(j[i][c]);
  }
  return m;
}

/// Scalar polynomial as a term list, ordered leading term first.
inline Json to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exponents"] = m.e;
    t["coeff"] = to_json(c);
    terms.push_back(std::move(t));
  }
  Json out;
  out["terms"] = std::move(terms);
  out["text"] = p.str();
  return out;
}

namespace detail {

inline std::vector<int> exponents_from_json(const Json& j, int nvars) {
  if (!j.is_array() || static_cast<int>(j.size()) != nvars)
    throw ParseError("exponent list length must match the dimension");
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0)
      throw ParseError("exponents must be non-negative integers");
    e.push_back(x.get<int>());
  }
  return e;
}

}  // namespace detail

inline Poly poly_from_json(const Json& j, int nvars) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("expected a polynomial object with a terms array");
  Poly p(nvars);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
      throw ParseError("polynomial term needs exponents and coeff");
    p.add_term(Monomial(detail::exponents_from_json(t["exponents"], nvars)),
               rational_from_json(t["coeff"]));
  }
  return p;
}

/// Vector field as a flat term list; components are 1-based in files.
inline Json field_terms_to_json(const VectorField& f) {
  Json terms = Json::array();
  for (int l = 0; l < f.nvars(); ++l)
    for (const auto& [m, c] : f.component(l).terms()) {
      Json t;
      t["component"] = l + 1;
      t["exponents"] = m.e;
      t["coeff"] = to_json(c);
      terms.push_back(std::move(t));
    }
  return terms;
}

inline Json to_json(const VectorField& f) {
  Json out;
  out["terms"] = field_terms_to_json(f);
  out["text"] = f.str();
  return out;
}

inline VectorField field_from_terms_json(const Json& terms, int nvars) {
  if (!terms.is_array()) throw ParseError("expected an array of field terms");
  VectorField f(nvars);
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("component") || !t.contains("exponents") ||
        !t.contains("coeff"))
      throw ParseError("field term needs component, exponents and coeff");
    if (!t["component"].is_number_integer())
      throw ParseError("field component must be an integer");
    const int l = t["component"].get<int>();
    if (l < 1 || l > nvars)
      throw ParseError("field component out of range 1.." + std::to_string(nvars));
    f.component(l - 1).add_term(
        Monomial(detail::exponents_from_json(t["exponents"], nvars)),
        rational_from_json(t["coeff"]));
  }
  return f;
}

inline VectorField field_from_json(const Json& j, int nvars) {
  if (j.is_array()) return field_from_terms_json(j, nvars);
  if (j.is_object() && j.contains("terms"))
    return field_from_terms_json(j["terms"], nvars);
  throw ParseError("expected a vector field as a term array");
}

/// Exp-polynomial as a term list ordered by (lambda, k).
inline Json to_json(const ExpPoly& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.terms()) {
    Json t;
    t["lambda"] = to_json(key.first);
    t["k"] = key.second;
    t["coeff"] = to_json(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

inline ExpPoly exppoly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an exp-polynomial term array");
  ExpPoly f;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("lambda") || !t.contains("k") ||
        !t.contains("coeff"))
      throw ParseError("exp-polynomial term needs lambda, k and coeff");
    if (!t["k"].is_number_integer() || t["k"].get<int>() < 0)
      throw ParseError("exp-polynomial power must be a non-negative integer");
    f.add_term(rational_from_json(t["lambda"]), t["k"].get<int>(),
               rational_from_json(t["coeff"]));
  }
  return f;
}

inline Json to_json(const EDESystem& sys) {
  Json terms = Json::array();
  for (const auto& t : sys.terms) {
    Json jt;
    jt["seed"] = t.seed;
    jt["alpha"] = to_json(t.alpha);
    jt["sigma"] = to_json(t.sigma);
    terms.push_back(std::move(jt));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

inline EDESystem system_from_json(const Json& j, int seed_count) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("expected a system object with a terms array");
  EDESystem sys;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("seed") || !t.contains("alpha") ||
        !t.contains("sigma"))
      throw ParseError("system term needs seed, alpha and sigma");
    if (!t["seed"].is_number_integer())
      throw ParseError("system seed must be an integer index");
    EDETerm term;
    term.seed = t["seed"].get<int>();
    if (term.seed < 0 || term.seed >= seed_count)
      throw ParseError("system seed index out of range");
    term.alpha = rational_from_json(t["alpha"]);
    term.sigma = rationals_from_json(t["sigma"]);
    if (term.sigma.empty())
      throw ParseError("system sigma must list at least one coefficient");
    sys.terms.push_back(std::move(term));
  }
  return sys;
}

/// Finiteness verdict with its externally checkable certificate.
inline Json to_json(const FinitenessVerdict& v) {
  Json out;
  if (const auto* inf = std::get_if<InfiniteCertified>(&v)) {
    out["verdict"] = "InfiniteCertified";
    Json cert;
    cert["witness"] = to_json(inf->witness);
    out["certificate"] = std::move(cert);
  } else if (const auto* fin = std::get_if<FiniteCertified>(&v)) {
    out["verdict"] = "FiniteCertified";
    out["max_degree"] = fin->max_degree;
    Json cert;
    cert["combination"] = to_json(fin->combination);
    cert["spectrum"] = to_json(fin->spectrum);
    out["certificate"] = std::move(cert);
  } else {
    out["verdict"] = "Undetermined";
    out["searched_bound"] = std::get<Undetermined>(v).searched_bound;
  }
  return out;
}

/// One self-contained problem per file; everything rational is a string.
struct ProblemFile {
  int dimension = 0;
  std::vector<QMatrix> generators;
  std::optional<QMatrix> symmetry;
  std::optional<VectorField> field;
  std::vector<VectorField> seeds;
  std::optional<Json> system;  // parsed against the seeds at dispatch time
  int max_degree = 6;
  int cap = 200;
};

inline ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "dimension" && key != "generators" && key != "symmetry" &&
        key != "field" && key != "seeds" && key != "system" && key != "options")
      throw ParseError("unknown problem key: " + key);
  }
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw ParseError("problem needs an integer dimension");
  ProblemFile p;
  p.dimension = j["dimension"].get<int>();
  if (p.dimension < 1) throw ParseError("dimension must be positive");

  if (j.contains("generators")) {
    if (!j["generators"].is_array())
      throw ParseError("generators must be an array of matrices");
    for (const auto& g : j["generators"]) {
      QMatrix m = matrix_from_json(g);
      if (m.rows() != p.dimension || m.cols() != p.dimension)
        throw ParseError("generator is not dimension x dimension");
      p.generators.push_back(std::move(m));
    }
  }
  if (j.contains("symmetry")) {
    QMatrix m = matrix_from_json(j["symmetry"]);
    if (m.rows() != p.dimension || m.cols() != p.dimension)
      throw ParseError("symmetry is not dimension x dimension");
    p.symmetry = std::move(m);
  }
  if (j.contains("field")) {
    const Json& f = j["field"];
    if (!f.is_object()) throw ParseError("field must be an object");
    for (const auto& [key, value] : f.items())
      if (key != "linear" && key != "terms")
        throw ParseError("unknown field key: " + key);
    VectorField v(p.dimension);
    if (f.contains("linear")) {
      QMatrix b = matrix_from_json(f["linear"]);
      if (b.rows() != p.dimension || b.cols() != p.dimension)
        throw ParseError("field linear part is not dimension x dimension");
      v += VectorField::linear(b);
    }
    if (f.contains("terms")) v += field_from_terms_json(f["terms"], p.dimension);
    p.field = std::move(v);
  }
  if (j.contains("seeds")) {
    if (!j["seeds"].is_array()) throw ParseError("seeds must be an array");
    for (const auto& s : j["seeds"])
      p.seeds.push_back(field_from_json(s, p.dimension));
  }
  if (j.contains("system")) p.system = j["system"];
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) throw ParseError("options must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key == "max_degree" && value.is_number_integer())
        p.max_degree = value.get<int>();
      else if (key == "cap" && value.is_number_integer())
        p.cap = value.get<int>();
      else
        throw ParseError("unknown or malformed option: " + key);
    }
  }
  return p;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

}  // namespace centra

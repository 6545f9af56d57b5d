#pragma once

#include "matrix.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace mpl {

using json = nlohmann::json;

inline json to_json(const rational& q) { return to_string(q); }

inline rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return rational(j.get<long>());
  throw std::invalid_argument("rational must be a \"p/q\" string or an integer");
}

inline json to_json(const ExactMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    data.push_back(row);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

// Accepts {"rows":r,"cols":c,"data":[[...],...]} or a bare array of rows.
inline ExactMatrix matrix_from_json(const json& j) {
  const json& data = j.is_object() ? j.at("data") : j;
  if (!data.is_array()) throw std::invalid_argument("matrix data must be an array of rows");
  std::size_t rows = data.size();
  std::size_t cols = rows ? data[0].size() : 0;
  if (j.is_object()) {
    if (j.contains("rows") && j.at("rows").get<std::size_t>() != rows)
      throw std::invalid_argument("matrix \"rows\" does not match data");
    if (j.contains("cols") && j.at("cols").get<std::size_t>() != cols)
      throw std::invalid_argument("matrix \"cols\" does not match data");
  }
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (data[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j2 = 0; j2 < cols; ++j2) m(i, j2) = rational_from_json(data[i][j2]);
  }
  if (!m.is_nonnegative()) throw std::invalid_argument("matrix entries must be nonnegative");
  return m;
}

// A vector may be given as a plain array of entries or as a matrix object.
inline ExactMatrix vector_from_json(const json& j) {
  if (j.is_array() && (j.empty() || !j[0].is_array())) {
    ExactMatrix v(j.size(), 1);
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational_from_json(j[i]);
    if (!v.is_nonnegative()) throw std::invalid_argument("vector entries must be nonnegative");
    return v;
  }
  return matrix_from_json(j);
}

inline json vector_to_json(const ExactMatrix& v) {
  json a = json::array();
  for (std::size_t k = 0; k < v.size(); ++k) a.push_back(to_string(v[k]));
  return a;
}

inline json float_vector_to_json(const FloatMatrix& v) {
  json a = json::array();
  for (std::size_t k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace mpl

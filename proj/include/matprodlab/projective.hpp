#pragma once

#include "matrix.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mpl {

// delta = log(ratio) when finite; +infinity otherwise.
template <class T>
struct basic_log_value {
  bool finite = false;
  T ratio = T(1);

  static basic_log_value of_ratio(T r) { return {true, std::move(r)}; }
  static basic_log_value infinite() { return {false, T(1)}; }

  double value() const {
    if (!finite) return std::numeric_limits<double>::infinity();
    if constexpr (std::is_same_v<T, rational>) return log_of(ratio);
    else return std::log(static_cast<double>(ratio));
  }
  friend bool operator==(const basic_log_value& a, const basic_log_value& b) {
    return a.finite == b.finite && (!a.finite || a.ratio == b.ratio);
  }
  friend bool operator<(const basic_log_value& a, const basic_log_value& b) {
    if (!b.finite) return a.finite;
    if (!a.finite) return false;
    return a.ratio < b.ratio;
  }
  friend bool operator<=(const basic_log_value& a, const basic_log_value& b) { return !(b < a); }
};

using ExtendedLogValue = basic_log_value<rational>;

using IndexSet = std::vector<std::size_t>;

// Hypothesis (H): the nonzero entries fill exactly a rectangle I x J.
template <class T>
std::optional<std::pair<IndexSet, IndexSet>> hypothesis_H(const basic_matrix<T>& a) {
  if (a.is_zero_matrix()) throw std::domain_error("hypothesis (H) is undefined for the zero matrix");
  IndexSet rows, cols;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) { rows.push_back(i); break; }
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, j))) { cols.push_back(j); break; }
  for (auto i : rows)
    for (auto j : cols)
      if (is_zero(a(i, j))) return std::nullopt;
  return std::make_pair(rows, cols);
}

// delta(A): max over the rectangle of A(i,j)A(k,l) / (A(k,j)A(i,l)).
template <class T>
basic_log_value<T> delta_coeff(const basic_matrix<T>& a) {
  auto rect = hypothesis_H(a);
  if (!rect) return basic_log_value<T>::infinite();
  const auto& [rows, cols] = *rect;
  T best(1);
  for (auto i : rows) {
    for (auto k : rows) {
      if (i == k) continue;
      // max_j A(i,j)/A(k,j) times max_l A(k,l)/A(i,l)
      T up(0), down(0);
      bool first = true;
      for (auto j : cols) {
        T r1 = a(i, j) / a(k, j);
        T r2 = a(k, j) / a(i, j);
        if (first || up < r1) up = r1;
        if (first || down < r2) down = r2;
        first = false;
      }
      T cr = up * down;
      if (best < cr) best = cr;
    }
  }
  return basic_log_value<T>::of_ratio(best);
}

// tau(A) = tanh(delta(A)/4), and exactly 1 when (H) fails.
template <class T>
double tau(const basic_matrix<T>& a) {
  auto d = delta_coeff(a);
  if (!d.finite) return 1.0;
  return std::tanh(d.value() / 4.0);
}

// Hilbert projective distance between two nonnegative vectors.
template <class T>
basic_log_value<T> proj_distance(const basic_matrix<T>& x, const basic_matrix<T>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector dimension mismatch");
  if (x.is_zero_matrix() || y.is_zero_matrix()) throw std::domain_error("projective distance of a zero vector");
  bool first = true;
  T hi(0), lo(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    bool zx = is_zero(x[k]), zy = is_zero(y[k]);
    if (zx != zy) return basic_log_value<T>::infinite();
    if (zx) continue;
    T r = x[k] / y[k];
    if (first || hi < r) hi = r;
    if (first || r < lo) lo = r;
    first = false;
  }
  return basic_log_value<T>::of_ratio(hi / lo);
}

// Floating-point distance for diagnostics; +inf on support mismatch.
inline double proj_distance_float(const FloatMatrix& x, const FloatMatrix& y) {
  return proj_distance(x, y).value();
}

// Lambda_X := ||X|| / min nonzero entry, the vector analogue of Lambda_A.
template <class T>
T vector_Lambda(const basic_matrix<T>& x) {
  T n = norm1(x);
  bool first = true;
  T m(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (is_zero(x[k])) continue;
    if (first || x[k] < m) m = x[k];
    first = false;
  }
  if (first) throw std::domain_error("Lambda of a zero vector");
  return n / m;
}

}  // namespace mpl

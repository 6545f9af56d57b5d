#pragma once

#include "rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

template <class T>
inline bool is_zero(const T& x) {
  return x == T(0);
}
inline bool is_zero(const rational& x) { return sgn(x) == 0; }

// Dense row-major matrix. Vectors are 1-column matrices and row vectors are
// 1-row matrices.
template <class T>
class basic_matrix {
 public:
  using value_type = T;

  basic_matrix() = default;
  basic_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  basic_matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static basic_matrix identity(std::size_t n) {
    basic_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static basic_matrix zeros(std::size_t rows, std::size_t cols) { return basic_matrix(rows, cols); }
  static basic_matrix column(const std::vector<T>& v) {
    basic_matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
    return m;
  }
  static basic_matrix row(const std::vector<T>& v) {
    basic_matrix m(1, v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m.data_[i] = v[i];
    return m;
  }
  // Canonical column vector U_i (0-based index).
  static basic_matrix unit(std::size_t d, std::size_t i) {
    basic_matrix m(d, 1);
    m.data_.at(i) = T(1);
    return m;
  }
  static basic_matrix ones(std::size_t d) {
    basic_matrix m(d, 1);
    for (auto& x : m.data_) x = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_vector() const { return cols_ == 1 || rows_ == 1; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return data_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * cols_ + j];
  }
  // Flat access, convenient for vectors.
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }
  const std::vector<T>& data() const { return data_; }

  basic_matrix col(std::size_t j) const {
    basic_matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.data_[i] = (*this)(i, j);
    return c;
  }
  basic_matrix row_at(std::size_t i) const {
    basic_matrix r(1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r.data_[j] = (*this)(i, j);
    return r;
  }
  basic_matrix transpose() const {
    basic_matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }
  bool is_nonnegative() const {
    for (const auto& x : data_)
      if (x < T(0)) return false;
    return true;
  }

  friend bool operator==(const basic_matrix& a, const basic_matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const basic_matrix& a, const basic_matrix& b) { return !(a == b); }

  basic_matrix& operator+=(const basic_matrix& b) {
    require_same_shape(b);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += b.data_[k];
    return *this;
  }
  basic_matrix& operator-=(const basic_matrix& b) {
    require_same_shape(b);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= b.data_[k];
    return *this;
  }
  basic_matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  basic_matrix& operator/=(const T& s) {
    for (auto& x : data_) x /= s;
    return *this;
  }
  friend basic_matrix operator+(basic_matrix a, const basic_matrix& b) { return a += b; }
  friend basic_matrix operator-(basic_matrix a, const basic_matrix& b) { return a -= b; }
  friend basic_matrix operator*(basic_matrix a, const T& s) { return a *= s; }
  friend basic_matrix operator*(const T& s, basic_matrix a) { return a *= s; }
  friend basic_matrix operator/(basic_matrix a, const T& s) { return a /= s; }

  template <class U>
  basic_matrix<U> cast(const std::function<U(const T&)>& f) const {
    basic_matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  }
  void require_same_shape(const basic_matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = basic_matrix<rational>;
using FloatMatrix = basic_matrix<double>;

// Exact product; zero entries of the left factor are skipped, which keeps
// products with sparse 0/1 generators cheap.
template <class T>
basic_matrix<T> product(const basic_matrix<T>& a, const basic_matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
  basic_matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const T& bkj = b(k, j);
        if (is_zero(bkj)) continue;
        c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

template <class T>
basic_matrix<T> operator*(const basic_matrix<T>& a, const basic_matrix<T>& b) {
  return product(a, b);
}

// Left-to-right product A_1 A_2 ... A_n; the identity of size d when empty.
template <class T>
basic_matrix<T> chain_product(const std::vector<basic_matrix<T>>& factors, std::size_t d) {
  basic_matrix<T> p = basic_matrix<T>::identity(d);
  for (const auto& f : factors) p = product(p, f);
  return p;
}

// A^e by repeated squaring.
template <class T>
basic_matrix<T> matrix_power(const basic_matrix<T>& a, unsigned long e) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_power needs a square matrix");
  basic_matrix<T> r = basic_matrix<T>::identity(a.rows()), b = a;
  while (e) {
    if (e & 1) r = product(r, b);
    e >>= 1;
    if (e) b = product(b, b);
  }
  return r;
}

// Sum of the (absolute values of the) entries.
template <class T>
T norm1(const basic_matrix<T>& m) {
  T s(0);
  for (const auto& x : m.data()) s += (x < T(0) ? T(-x) : x);
  return s;
}

template <class T>
T column_norm(const basic_matrix<T>& m, std::size_t j) {
  T s(0);
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) < T(0) ? T(-m(i, j)) : m(i, j);
  return s;
}

// Normalizes a nonzero nonnegative vector (or matrix) to unit entry sum.
template <class T>
basic_matrix<T> normalized(const basic_matrix<T>& m) {
  T n = norm1(m);
  if (is_zero(n)) throw std::domain_error("cannot normalize a zero vector");
  return m / n;
}

inline FloatMatrix to_float(const ExactMatrix& m) {
  FloatMatrix f(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = m(i, j).get_d();
  return f;
}

// Normalized to unit entry sum before conversion so that huge entries do not
// overflow a double.
inline FloatMatrix to_float_normalized(const ExactMatrix& v) { return to_float(normalized(v)); }

inline ExactMatrix exact_from_ints(std::initializer_list<std::initializer_list<long>> init) {
  std::size_t rows = init.size();
  std::size_t cols = rows ? init.begin()->size() : 0;
  ExactMatrix m(rows, cols);
  std::size_t i = 0;
  for (const auto& r : init) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix initializer");
    std::size_t j = 0;
    for (long x : r) m(i, j++) = rational(x);
    ++i;
  }
  return m;
}

// Support mask Delta(V) of a vector, as a 0/1 pattern.
class SupportPattern {
 public:
  SupportPattern() = default;
  explicit SupportPattern(std::size_t dim) : mask_(dim, 0) {}
  explicit SupportPattern(std::vector<std::uint8_t> mask) : mask_(std::move(mask)) {
    for (auto b : mask_)
      if (b > 1) throw std::invalid_argument("support mask entries must be 0 or 1");
  }
  static SupportPattern from_string(const std::string& bits) {
    std::vector<std::uint8_t> m;
    for (char c : bits) {
      if (c == '0' || c == '1') m.push_back(static_cast<std::uint8_t>(c - '0'));
      else if (c != ',' && c != ' ') throw std::invalid_argument("bad support string: " + bits);
    }
    return SupportPattern(std::move(m));
  }

  std::size_t dim() const { return mask_.size(); }
  bool operator[](std::size_t i) const { return mask_[i] != 0; }
  void set(std::size_t i, bool v = true) { mask_.at(i) = v ? 1 : 0; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : mask_) c += b;
    return c;
  }
  bool is_zero() const { return count() == 0; }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) idx.push_back(i);
    return idx;
  }
  std::string str() const {
    std::string s;
    for (auto b : mask_) s.push_back(static_cast<char>('0' + b));
    return s;
  }
  // Componentwise inclusion I(p) subset of I(q).
  bool subset_of(const SupportPattern& q) const {
    require_dim(q);
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i] && !q.mask_[i]) return false;
    return true;
  }

  friend bool operator==(const SupportPattern& a, const SupportPattern& b) { return a.mask_ == b.mask_; }
  friend bool operator!=(const SupportPattern& a, const SupportPattern& b) { return !(a == b); }
  friend bool operator<(const SupportPattern& a, const SupportPattern& b) { return a.mask_ < b.mask_; }

  void require_dim(const SupportPattern& q) const {
    if (q.dim() != dim()) throw std::invalid_argument("support pattern dimension mismatch");
  }

 private:
  std::vector<std::uint8_t> mask_;
};

enum class PatternOrder { LE, GE, EQ, INCOMPARABLE };

inline const char* to_string(PatternOrder o) {
  switch (o) {
    case PatternOrder::LE: return "LE";
    case PatternOrder::GE: return "GE";
    case PatternOrder::EQ: return "EQ";
    default: return "INCOMPARABLE";
  }
}

template <class T>
SupportPattern support_pattern(const basic_matrix<T>& v) {
  SupportPattern p(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) p.set(k, !is_zero(v[k]));
  return p;
}

template <class T>
SupportPattern column_support(const basic_matrix<T>& m, std::size_t j) {
  SupportPattern p(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) p.set(i, !is_zero(m(i, j)));
  return p;
}

template <class T>
SupportPattern row_support(const basic_matrix<T>& m, std::size_t i) {
  SupportPattern p(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) p.set(j, !is_zero(m(i, j)));
  return p;
}

inline PatternOrder compare_patterns(const SupportPattern& p, const SupportPattern& q) {
  p.require_dim(q);
  bool le = p.subset_of(q);
  bool ge = q.subset_of(p);
  if (le && ge) return PatternOrder::EQ;
  if (le) return PatternOrder::LE;
  if (ge) return PatternOrder::GE;
  return PatternOrder::INCOMPARABLE;
}

// #Col(M): number of distinct nonzero column supports.
template <class T>
std::size_t col_pattern_count(const basic_matrix<T>& m) {
  std::vector<SupportPattern> seen;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SupportPattern p = column_support(m, j);
    if (p.is_zero()) continue;
    bool found = false;
    for (const auto& s : seen)
      if (s == p) { found = true; break; }
    if (!found) seen.push_back(p);
  }
  return seen.size();
}

// Rank over the rationals by exact Gaussian elimination.
inline std::size_t rank(const ExactMatrix& m) {
  ExactMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, c))) continue;
      rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace mpl

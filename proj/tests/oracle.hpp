#pragma once

// Independent test-side reference implementations built on Boost
// multiprecision rationals, sharing no code with the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Mat = std::vector<std::vector<Q>>;

inline Mat from_ints(const std::vector<std::vector<long>>& a) {
  Mat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (long x : a[i]) m[i].push_back(Q(x));
  return m;
}

inline Mat identity(std::size_t d) {
  Mat m(d, std::vector<Q>(d, Q(0)));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat c(n, std::vector<Q>(m, Q(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
  return c;
}

inline const std::vector<Mat>& beta_gens() {
  static const std::vector<Mat> g = {
      from_ints({{1, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                 {1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0, 0}}),
      from_ints({{0, 0, 1, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 1, 1, 0, 0}, {1, 0, 0, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}}),
      from_ints({{1, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 1, 1, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}})};
  return g;
}

inline Mat word(const std::vector<Mat>& gens, const std::string& w) {
  Mat m = identity(gens[0].size());
  for (char c : w) m = mul(m, gens[static_cast<std::size_t>(c - '0')]);
  return m;
}

inline Q total(const Mat& a) {
  Q s = 0;
  for (const auto& r : a)
    for (const auto& x : r) s += x;
  return s;
}

inline Q col_total(const Mat& a, std::size_t j) {
  Q s = 0;
  for (const auto& r : a) s += r[j];
  return s;
}

inline std::vector<int> col_support(const Mat& a, std::size_t j) {
  std::vector<int> s;
  for (const auto& r : a) s.push_back(r[j] != 0);
  return s;
}

inline bool leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool h1(const Mat& a) {
  std::size_t n = a[0].size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      auto s = col_support(a, j), t = col_support(a, k);
      if (!leq(s, t) && !leq(t, s)) return false;
    }
  return true;
}

inline std::size_t ncol(const Mat& a) {
  std::vector<std::vector<int>> seen;
  for (std::size_t j = 0; j < a[0].size(); ++j) {
    auto s = col_support(a, j);
    if (std::count(s.begin(), s.end(), 1) == 0) continue;
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
  }
  return seen.size();
}

// Direct quantifier transcriptions of the H2 and H3 constants.
inline Q Lambda(const Mat& a) {
  Q best = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      if (a[i][j] != 0) best = std::max(best, Q(col_total(a, j) / a[i][j]));
  return best;
}

inline Q lambda(const Mat& a) {
  Q best = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j0 = 0; j0 < a[0].size(); ++j0)
      for (std::size_t j1 = 0; j1 < a[0].size(); ++j1)
        if (a[i][j0] != 0 && a[i][j1] == 0) best = std::max(best, Q(col_total(a, j1) / a[i][j0]));
  return best;
}

inline std::size_t rank(Mat a) {
  std::size_t r = 0, rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// Cross-ratio maximum over all quadruples (i,k,j,l) of a matrix satisfying (H).
inline Q delta_ratio(const Mat& a) {
  Q best = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t j = 0; j < a[0].size(); ++j)
        for (std::size_t l = 0; l < a[0].size(); ++l) {
          if (a[i][j] == 0 || a[k][l] == 0 || a[k][j] == 0 || a[i][l] == 0) continue;
          best = std::max(best, Q(a[i][j] * a[k][l] / (a[k][j] * a[i][l])));
        }
  return best;
}

}  // namespace oracle

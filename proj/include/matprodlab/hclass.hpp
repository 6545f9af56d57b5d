#pragma once

#include "matrix.hpp"
#include "projective.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mpl {

// Column supports form a chain; zero columns are comparable to everything.
template <class T>
bool in_H1(const basic_matrix<T>& a) {
  std::vector<SupportPattern> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_support(a, j));
  for (std::size_t j0 = 0; j0 < cols.size(); ++j0)
    for (std::size_t j1 = j0 + 1; j1 < cols.size(); ++j1)
      if (compare_patterns(cols[j0], cols[j1]) == PatternOrder::INCOMPARABLE) return false;
  return true;
}

template <class T>
std::vector<T> column_norms(const basic_matrix<T>& a) {
  std::vector<T> n(a.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) n[j] += a(i, j);
  return n;
}

// Lambda_A = max(1, max over nonzero A(i,j) of ||A U_j|| / A(i,j)).
template <class T>
T min_Lambda(const basic_matrix<T>& a) {
  if (a.is_zero_matrix()) throw std::domain_error("min_Lambda of the zero matrix");
  auto norms = column_norms(a);
  T best(1);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    bool have = false;
    T smallest(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (is_zero(a(i, j))) continue;
      if (!have || a(i, j) < smallest) smallest = a(i, j);
      have = true;
    }
    if (!have) continue;
    T r = norms[j] / smallest;
    if (best < r) best = r;
  }
  return best;
}

// Triple (i0, j0, j1) attaining lambda_A.
struct LambdaWitness {
  std::size_t i0 = 0, j0 = 0, j1 = 0;
  bool present = false;
};

// lambda_A = max(0, max of ||A U_j1|| / A(i0,j0) with A(i0,j0) != 0 = A(i0,j1)).
template <class T>
T min_lambda(const basic_matrix<T>& a, LambdaWitness* witness = nullptr) {
  if (a.is_zero_matrix()) throw std::domain_error("min_lambda of the zero matrix");
  auto norms = column_norms(a);
  T best(0);
  LambdaWitness w;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool have_nz = false, have_z = false;
    T smallest(0), heaviest(0);
    std::size_t js = 0, jh = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) {
        if (!have_z || heaviest < norms[j]) { heaviest = norms[j]; jh = j; }
        have_z = true;
      } else {
        if (!have_nz || a(i, j) < smallest) { smallest = a(i, j); js = j; }
        have_nz = true;
      }
    }
    if (!have_nz || !have_z) continue;
    T r = heaviest / smallest;
    if (!w.present || best < r) {
      best = r;
      w = {i, js, jh, true};
    }
  }
  if (witness) *witness = w;
  return best;
}

struct HClassProfile {
  bool in_H1 = false;
  rational lambda_min;
  rational Lambda_min;
  std::size_t col_patterns = 0;
};

inline HClassProfile profile(const ExactMatrix& a) {
  return {in_H1(a), min_lambda(a), min_Lambda(a), col_pattern_count(a)};
}

inline bool in_H2(const ExactMatrix& a, const rational& Lambda) { return min_Lambda(a) <= Lambda; }
inline bool in_H3(const ExactMatrix& a, const rational& lambda) { return min_lambda(a) <= lambda; }

struct HBounds {
  rational Lambda;
  rational lambda;
};

// Composition bounds: AB in H2(La + la*Lb) and H3(la*lb).
inline HBounds compose_h_bounds(const HBounds& a, const HBounds& b) {
  if (a.Lambda < 1 || b.Lambda < 1 || a.lambda < 0 || b.lambda < 0)
    throw std::invalid_argument("compose_h_bounds needs Lambda >= 1 and lambda >= 0");
  HBounds r{a.Lambda + a.lambda * b.Lambda, a.lambda * b.lambda};
  r.Lambda.canonicalize();
  r.lambda.canonicalize();
  return r;
}

// Folds compose_h_bounds left to right over a chain of factor bounds.
inline HBounds fold_h_bounds(const std::vector<HBounds>& chain) {
  if (chain.empty()) throw std::invalid_argument("empty chain");
  HBounds acc = chain.front();
  for (std::size_t k = 1; k < chain.size(); ++k) acc = compose_h_bounds(acc, chain[k]);
  return acc;
}

struct ClosureReport {
  bool part_d = true;
  bool part_e = true;
  bool part_f = true;
  std::vector<std::string> violations;
  bool ok() const { return part_d && part_e && part_f; }
};

// Checks parts (d), (e), (f) of the left/right multiplication lemma for BAC.
inline ClosureReport h1_closure_check(const ExactMatrix& b, const ExactMatrix& a, const ExactMatrix& c) {
  if (!in_H1(a)) throw std::invalid_argument("h1_closure_check requires A in H1");
  ClosureReport rep;
  ExactMatrix ba = product(b, a);
  ExactMatrix bac = product(ba, c);
  std::vector<SupportPattern> ba_cols;
  for (std::size_t j = 0; j < ba.cols(); ++j) ba_cols.push_back(column_support(ba, j));
  for (std::size_t j = 0; j < bac.cols(); ++j) {
    SupportPattern p = column_support(bac, j);
    if (p.is_zero()) continue;
    bool found = false;
    for (const auto& q : ba_cols)
      if (q == p) { found = true; break; }
    if (!found) {
      rep.part_d = false;
      rep.violations.push_back("(d) column " + std::to_string(j + 1) + " support " + p.str() + " not among BA supports");
    }
  }
  if (col_pattern_count(bac) > col_pattern_count(a)) {
    rep.part_e = false;
    rep.violations.push_back("(e) #Col(BAC) > #Col(A)");
  }
  if (!in_H1(bac)) {
    rep.part_f = false;
    rep.violations.push_back("(f) BAC not in H1");
  }
  return rep;
}

// Parts (a), (b), (c): left multiplication preserves order, equality and
// vanishing of column supports. Returns the list of violations.
inline std::vector<std::string> left_multiplication_check(const ExactMatrix& b, const ExactMatrix& a) {
  std::vector<std::string> out;
  ExactMatrix ba = product(b, a);
  for (std::size_t j0 = 0; j0 < a.cols(); ++j0) {
    SupportPattern p0 = column_support(a, j0), q0 = column_support(ba, j0);
    if (p0.is_zero() && !q0.is_zero()) out.push_back("(c) column " + std::to_string(j0 + 1));
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      SupportPattern p1 = column_support(a, j1), q1 = column_support(ba, j1);
      if (p0.subset_of(p1) && !q0.subset_of(q1))
        out.push_back("(a) columns " + std::to_string(j0 + 1) + "," + std::to_string(j1 + 1));
      if (p0 == p1 && q0 != q1) out.push_back("(b) columns " + std::to_string(j0 + 1) + "," + std::to_string(j1 + 1));
    }
  }
  return out;
}

// Inferred form used in the dominance argument: for Q in H2(Lambda) and
// H3(lambda), Delta(Q U_j0) > Delta(Q U_j1) != 0 implies
// Q(j, j1) <= lambda * Lambda * Q(j, j0) for every row j.
inline bool dominated_column_bound_holds(const ExactMatrix& q) {
  rational L = min_Lambda(q), l = min_lambda(q);
  for (std::size_t j0 = 0; j0 < q.cols(); ++j0) {
    SupportPattern s0 = column_support(q, j0);
    for (std::size_t j1 = 0; j1 < q.cols(); ++j1) {
      SupportPattern s1 = column_support(q, j1);
      if (s1.is_zero() || s1 == s0 || !s1.subset_of(s0)) continue;
      for (std::size_t j = 0; j < q.rows(); ++j)
        if (q(j, j1) > l * L * q(j, j0)) return false;
    }
  }
  return true;
}

// Inferred form: Delta(X) = Delta(Y) with Lambda_X, Lambda_Y <= M implies
// delta(X, Y) <= log(M^2); compared exactly as ratio <= M^2.
inline bool same_face_distance_bound_holds(const ExactMatrix& x, const ExactMatrix& y) {
  if (support_pattern(x) != support_pattern(y)) return true;
  rational m = rmax(vector_Lambda(x), vector_Lambda(y));
  auto d = proj_distance(x, y);
  return d.finite && d.ratio <= m * m;
}

}  // namespace mpl

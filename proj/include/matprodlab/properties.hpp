#pragma once

#include "hclass.hpp"
#include "matrix.hpp"
#include "projective.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace mpl {

struct PropertyTally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed == 0) first_failure = what;
    ++failed;
  }
  bool ok() const { return failed == 0 && checked > 0; }
};

struct PropertySuiteReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  PropertyTally contraction;   // delta(AB) <= delta(A) tau(B)
  PropertyTally sandwich;      // |X - Y| / d <= delta(X, Y) <= |X - Y| / min
  PropertyTally composition;   // AB in H2(La + la Lb) and H3(la lb)
  PropertyTally closure_abc;   // left multiplication parts (a)-(c)
  PropertyTally closure_def;   // parts (d)-(f) for A in H1
  bool ok() const {
    return contraction.ok() && sandwich.ok() && composition.ok() && closure_abc.ok() && closure_def.ok();
  }
};

namespace detail {

inline ExactMatrix random_nonneg(std::mt19937_64& rng, std::size_t r, std::size_t c, int hi, double zero_p) {
  std::uniform_int_distribution<int> val(1, hi);
  std::bernoulli_distribution zero(zero_p);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = zero(rng) ? 0 : val(rng);
  return m;
}

// Nonzero entries filling a random rectangle, so that (H) holds.
inline ExactMatrix random_rectangle(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> val(1, 9);
  std::bernoulli_distribution keep(0.6);
  std::vector<bool> rows(r), cols(c);
  for (std::size_t i = 0; i < r; ++i) rows[i] = keep(rng);
  for (std::size_t j = 0; j < c; ++j) cols[j] = keep(rng);
  rows[rng() % r] = true;
  cols[rng() % c] = true;
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i] && cols[j]) m(i, j) = rational(val(rng), val(rng));
  return m;
}

// Columns supported on a random chain of row sets, so the matrix is in H1.
inline ExactMatrix random_h1(std::mt19937_64& rng, std::size_t d) {
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> val(1, 3);
  ExactMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t len = rng() % (d + 1);
    for (std::size_t t = 0; t < len; ++t) m(perm[t], j) = val(rng);
  }
  return m;
}

}  // namespace detail

// Seeded randomized check of the metric and class lemmas on small matrices.
inline PropertySuiteReport metric_property_suite(std::size_t samples, std::uint64_t seed) {
  PropertySuiteReport rep;
  rep.samples = samples;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    std::string tag = "sample " + std::to_string(t);
    std::size_t d1 = 2 + rng() % 3, d2 = 2 + rng() % 3, d3 = 2 + rng() % 3;

    ExactMatrix a = detail::random_rectangle(rng, d1, d2);
    ExactMatrix b = detail::random_nonneg(rng, d2, d3, 6, 0.3);
    ExactMatrix ab = product(a, b);
    if (!ab.is_zero_matrix()) {
      double lhs = delta_coeff(ab).value();
      double da = delta_coeff(a).value();
      double tb = tau(b);
      double rhs = (tb == 0 || da == 0) ? 0.0 : da * tb;
      rep.contraction.record(lhs <= rhs + 1e-12, tag);
    }

    std::size_t d = 2 + rng() % 4;
    ExactMatrix x(d, 1), y(d, 1);
    std::uniform_int_distribution<int> val(1, 9);
    std::bernoulli_distribution on(0.7);
    for (std::size_t i = 0; i < d; ++i)
      if (i == 0 || on(rng)) {
        x[i] = val(rng);
        y[i] = val(rng);
      }
    x = normalized(x);
    y = normalized(y);
    auto dist = proj_distance(x, y);
    rational diff = norm1(x - y), lo(0);
    bool first = true;
    for (std::size_t i = 0; i < d; ++i)
      if (sgn(x[i]) != 0) {
        rational m = rmin(x[i], y[i]);
        if (first || m < lo) lo = m;
        first = false;
      }
    double dv = dist.value();
    bool lower = diff.get_d() / static_cast<double>(d) <= dv + 1e-12;
    bool upper = dv <= rational(diff / lo).get_d() + 1e-12;
    rep.sandwich.record(dist.finite && lower && upper, tag);

    std::size_t e = 2 + rng() % 3;
    ExactMatrix p = detail::random_nonneg(rng, e, e, 3, 0.45), q = detail::random_nonneg(rng, e, e, 3, 0.45);
    if (!p.is_zero_matrix() && !q.is_zero_matrix()) {
      ExactMatrix pq = product(p, q);
      if (!pq.is_zero_matrix()) {
        HBounds bound = compose_h_bounds({min_Lambda(p), min_lambda(p)}, {min_Lambda(q), min_lambda(q)});
        rep.composition.record(min_Lambda(pq) <= bound.Lambda && min_lambda(pq) <= bound.lambda, tag);
      }
    }

    std::size_t f = 2 + rng() % 3;
    ExactMatrix B = detail::random_nonneg(rng, f, f, 1, 0.5), A = detail::random_nonneg(rng, f, f, 1, 0.5);
    ExactMatrix C = detail::random_nonneg(rng, f, f, 1, 0.5);
    rep.closure_abc.record(left_multiplication_check(B, A).empty(), tag);
    ExactMatrix H = detail::random_h1(rng, f);
    if (!H.is_zero_matrix()) rep.closure_def.record(h1_closure_check(B, H, C).ok(), tag);
  }
  return rep;
}

}  // namespace mpl

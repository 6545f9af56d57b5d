#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/family.hpp>
#include <matprodlab/hclass.hpp>

#include <random>

using namespace mpl;

namespace {

ExactMatrix random_sparse(std::mt19937& rng, std::size_t d, int hi = 3) {
  std::uniform_int_distribution<int> val(0, hi);
  std::bernoulli_distribution zero(0.45);
  ExactMatrix m(d, d);
  for (std::size_t i = 0; i < d * d; ++i) m[i] = zero(rng) ? 0 : val(rng);
  return m;
}

}  // namespace

TEST_CASE("H1 membership", "[hclass]") {
  CHECK(in_H1(product(ExactMatrix::column({1, 0, 2}), ExactMatrix::row({3, 1, 0}))));
  CHECK_FALSE(in_H1(word_product(beta_generators(), "010")));
  CHECK(in_H1(word_product(beta_generators(), "11111")));
  CHECK(in_H1(ExactMatrix::zeros(3, 3)));
}

TEST_CASE("minimal constants of the generators", "[hclass]") {
  ExactMatrix a0 = beta_generators()[0];
  auto o = bridge::to_oracle(a0);
  CHECK(bridge::to_q(min_Lambda(a0)) == oracle::Lambda(o));
  CHECK(bridge::to_q(min_lambda(a0)) == oracle::lambda(o));
  CHECK(min_Lambda(a0) == 2);
  CHECK(min_lambda(a0) == 2);
  CHECK(min_Lambda(ExactMatrix::identity(4)) == 1);
  CHECK(min_lambda(exact_from_ints({{1, 2}, {3, 4}})) == 0);
  CHECK_THROWS(min_Lambda(ExactMatrix::zeros(2, 2)));
}

TEST_CASE("lambda witness", "[hclass]") {
  LambdaWitness w;
  ExactMatrix m = word_product(beta_generators(), "002");
  rational l = min_lambda(m, &w);
  REQUIRE(w.present);
  CHECK(m(w.i0, w.j0) != 0);
  CHECK(m(w.i0, w.j1) == 0);
  CHECK(column_norm(m, w.j1) / m(w.i0, w.j0) == l);
}

TEST_CASE("minimal constants agree with the quantifier oracle", "[hclass]") {
  std::mt19937 rng(21);
  for (int t = 0; t < 500; ++t) {
    ExactMatrix m = random_sparse(rng, 4);
    if (m.is_zero_matrix()) continue;
    auto o = bridge::to_oracle(m);
    CHECK(bridge::to_q(min_Lambda(m)) == oracle::Lambda(o));
    CHECK(bridge::to_q(min_lambda(m)) == oracle::lambda(o));
    CHECK(in_H1(m) == oracle::h1(o));
    CHECK(col_pattern_count(m) == oracle::ncol(o));
  }
}

TEST_CASE("composition bounds", "[hclass]") {
  auto r = compose_h_bounds({1, 0}, {1, 0});
  CHECK(r.Lambda == 1);
  CHECK(r.lambda == 0);
  r = compose_h_bounds({13, 5}, {13, 5});
  CHECK(r.Lambda == 78);
  CHECK(r.lambda == 25);
  CHECK_THROWS(compose_h_bounds({rational(1, 2), 0}, {1, 0}));
  std::mt19937 rng(23);
  for (int t = 0; t < 2000; ++t) {
    ExactMatrix a = random_sparse(rng, 3), b = random_sparse(rng, 3);
    if (a.is_zero_matrix() || b.is_zero_matrix()) continue;
    ExactMatrix ab = product(a, b);
    if (ab.is_zero_matrix()) continue;
    HBounds bound = compose_h_bounds({min_Lambda(a), min_lambda(a)}, {min_Lambda(b), min_lambda(b)});
    CHECK(min_Lambda(ab) <= bound.Lambda);
    CHECK(min_lambda(ab) <= bound.lambda);
  }
}

TEST_CASE("folded chain bound", "[hclass]") {
  std::vector<HBounds> chain(130, HBounds{13, 5});
  HBounds f = fold_h_bounds(chain);
  // Independent closed form: 13 (1 + 5 + ... + 5^129) and 5^130.
  oracle::Q L = 0, p = 1;
  for (int i = 0; i < 130; ++i) {
    L += 13 * p;
    p *= 5;
  }
  CHECK(bridge::to_q(f.Lambda) == L);
  CHECK(bridge::to_q(f.lambda) == p);
}

TEST_CASE("family products respect composed bounds", "[hclass]") {
  std::vector<std::string> words = {"1", "010", "110", "20", "002", "10102", "12", "202"};
  for (const auto& u : words)
    for (const auto& v : words) {
      ExactMatrix a = word_product(beta_generators(), u), b = word_product(beta_generators(), v);
      ExactMatrix ab = product(a, b);
      CHECK(min_Lambda(ab) <= compose_h_bounds({min_Lambda(a), min_lambda(a)}, {min_Lambda(b), min_lambda(b)}).Lambda);
    }
}

TEST_CASE("closure lemma parts (a)-(f)", "[hclass]") {
  ExactMatrix chain = exact_from_ints({{1, 2, 0}, {0, 3, 0}, {0, 1, 0}});
  CHECK(h1_closure_check(ExactMatrix::identity(3), chain, ExactMatrix::identity(3)).ok());
  CHECK_THROWS(h1_closure_check(ExactMatrix::identity(3), ExactMatrix::identity(3), ExactMatrix::identity(3)));
  std::mt19937 rng(29);
  int checked = 0;
  for (int t = 0; t < 10000; ++t) {
    ExactMatrix b = random_sparse(rng, 4, 1), a = random_sparse(rng, 4, 1), c = random_sparse(rng, 4, 1);
    CHECK(left_multiplication_check(b, a).empty());
    if (!in_H1(a)) continue;
    ++checked;
    CHECK(h1_closure_check(b, a, c).ok());
  }
  CHECK(checked > 500);
  std::mt19937 rng2(31);
  std::uniform_int_distribution<int> dig(0, 2), len(1, 6);
  ExactMatrix a = word_product(beta_generators(), "11111");
  for (int t = 0; t < 300; ++t) {
    std::string u, v;
    for (int i = len(rng2); i > 0; --i) u.push_back(static_cast<char>('0' + dig(rng2)));
    for (int i = len(rng2); i > 0; --i) v.push_back(static_cast<char>('0' + dig(rng2)));
    CHECK(h1_closure_check(word_product(beta_generators(), u), a, word_product(beta_generators(), v)).ok());
  }
}

TEST_CASE("inferred dominance lemmas", "[hclass][inferred]") {
  std::mt19937 rng(37);
  for (int t = 0; t < 2000; ++t) {
    ExactMatrix q = random_sparse(rng, 4);
    if (q.is_zero_matrix()) continue;
    CHECK(dominated_column_bound_holds(q));
    ExactMatrix x = random_sparse(rng, 4).col(0), y = x;
    for (std::size_t i = 0; i < 4; ++i)
      if (sgn(x[i])) y[i] = rational(static_cast<long>(t % 7 + 1), static_cast<long>(i + 1));
    if (x.is_zero_matrix()) continue;
    CHECK(same_face_distance_bound_holds(x, y));
  }
}

TEST_CASE("class monotonicity and permutation invariance", "[hclass]") {
  std::mt19937 rng(41);
  for (int t = 0; t < 500; ++t) {
    ExactMatrix m = random_sparse(rng, 3);
    if (m.is_zero_matrix()) continue;
    rational L = min_Lambda(m), l = min_lambda(m);
    CHECK(in_H2(m, L));
    CHECK(in_H2(m, L + 1));
    CHECK(in_H3(m, l));
    ExactMatrix p(3, 3);
    // Cyclic permutation of rows and columns.
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) p((i + 1) % 3, (j + 2) % 3) = m(i, j);
    CHECK(min_Lambda(p) == L);
    CHECK(min_lambda(p) == l);
    CHECK(in_H1(p) == in_H1(m));
  }
}

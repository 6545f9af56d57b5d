#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/condc.hpp>

#include <random>

using namespace mpl;

namespace {

MatrixSequence random_sequence(std::mt19937& rng, std::size_t n, std::size_t d) {
  std::uniform_int_distribution<int> val(0, 3);
  MatrixSequence seq;
  for (std::size_t t = 0; t < n; ++t) {
    ExactMatrix m(d, d);
    for (std::size_t i = 0; i < d * d; ++i) m[i] = val(rng);
    seq.push_back(m);
  }
  return seq;
}

}  // namespace

TEST_CASE("cut sequences", "[condc]") {
  CutSequence c({0, 0, 2, 5, 9});
  CHECK(c.k_of(0) == 0);
  CHECK(c.k_of(1) == 0);
  CHECK(c.k_of(2) == 1);
  CHECK(c.k_of(4) == 1);
  CHECK(c.k_of(5) == 2);
  CHECK_THROWS(c.k_of(9));
  CHECK_THROWS(CutSequence({0, 1, 2}));
  CHECK_THROWS(CutSequence({0, 0, 3, 3}));
}

TEST_CASE("Q blocks", "[condc]") {
  std::mt19937 rng(47);
  MatrixSequence seq = random_sequence(rng, 12, 3);
  CutSequence c({0, 0, 2, 5, 9, 13});
  CHECK(q_block(seq, c, 0) == ExactMatrix::identity(3));
  // Before s_3 the block starts at 1, so Q_n = P_n.
  for (std::size_t n = 1; n < 5; ++n) CHECK(q_block(seq, c, n) == p_product(seq, n));
  CHECK(q_block(seq, c, 7) == product(product(seq[2], seq[3]), product(product(seq[4], seq[5]), seq[6])));
  // P_{s_k} = Q_{s_1} ... Q_{s_k} for every stored cut.
  for (std::size_t k = 1; k + 1 < c.size(); ++k) {
    oracle::Mat lhs = bridge::to_oracle(p_product(seq, c[k]));
    oracle::Mat rhs = oracle::identity(3);
    for (std::size_t p = 1; p <= k; ++p) rhs = oracle::mul(rhs, bridge::to_oracle(q_block(seq, c, c[p])));
    CHECK(lhs == rhs);
  }
  // The incremental walker agrees with the direct definition.
  BlockWalker w(seq, c);
  while (w.next()) {
    CHECK(w.Q() == q_block(seq, c, w.n()));
    CHECK(w.P() == p_product(seq, w.n()));
  }
  CHECK_THROWS(q_block(seq, c, 13));
}

TEST_CASE("reinforced cuts", "[condc]") {
  CutSequence s = CutSequence::every_step(20);
  // gamma = 1, 1, 2, 4, 7, 11, 16 and s_m = m - 1 for m >= 1.
  CHECK(reinforce_cuts(s).cuts() == std::vector<std::size_t>{0, 0, 1, 3, 6, 10, 15});
  CutSequence t({0, 0, 3, 4, 8, 11, 12, 20});
  CHECK(reinforce_cuts(t).cuts() == std::vector<std::size_t>{0, 0, 3, 8, 20});
}

TEST_CASE("condition (C) on a positive sequence", "[condc]") {
  ExactMatrix a = exact_from_ints({{1, 2}, {3, 1}});
  MatrixSequence seq(30, a);
  CutSequence c = CutSequence::every_step(31);
  auto w = check_condition_c(seq, c, 0, 4, 30);
  CHECK(w.ok);
  CHECK(w.horizon == 30);
  CHECK(w.max_lambda_seen == 0);
  CHECK(w.max_Lambda_seen == 4);
  CHECK(w.chained_ok);
  auto bad = check_condition_c(seq, c, 0, rational(5, 4), 30);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation_n);
  CHECK(*bad.violation_n == 1);
  CHECK_THROWS(check_condition_c(seq, c, 1, 4, 30));
}

TEST_CASE("column blocks, diamond restriction and h index", "[condc]") {
  ExactMatrix m = exact_from_ints({{1, 2, 0, 1}, {3, 0, 0, 1}, {1, 0, 0, 2}});
  auto b = column_blocks(m);
  REQUIRE(b.size() == 2);
  CHECK(b[0].rows == IndexSet{0, 1, 2});
  CHECK(b[0].cols == IndexSet{0, 3});
  CHECK(b[1].rows == IndexSet{0});
  CHECK(b[1].cols == IndexSet{1});
  ExactMatrix sum = h_diamond(m, b, 1) + h_diamond(m, b, 2);
  CHECK(sum == m);
  CHECK(hypothesis_H(h_diamond(m, b, 1)));
  CHECK(hypothesis_H(h_diamond(m, b, 2)));
  CHECK(h_index(ExactMatrix::column({1, 1, 1, 1}), b) == 1);
  CHECK(h_index(ExactMatrix::unit(4, 1), b) == 2);
  CHECK_THROWS(h_index(ExactMatrix::unit(4, 2), b));
  CHECK_THROWS(column_blocks(ExactMatrix::identity(2)));
  CHECK_THROWS(h_diamond(m, b, 3));
}

TEST_CASE("support identity for h index", "[condc]") {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> val(0, 4);
  int checked = 0;
  for (int t = 0; t < 3000; ++t) {
    ExactMatrix m(4, 4), x(4, 1);
    for (std::size_t i = 0; i < 16; ++i) m[i] = val(rng);
    for (std::size_t i = 0; i < 4; ++i) x[i] = val(rng) > 2 ? val(rng) + 1 : 0;
    if (!in_H1(m) || m.is_zero_matrix() || product(m, x).is_zero_matrix()) continue;
    auto b = column_blocks(m);
    std::size_t h = h_index(x, b);
    CHECK(support_pattern(product(m, x)).indices() == b[h - 1].rows);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("label compression", "[condc]") {
  CHECK(xi_compress(std::vector<int>{1, 1, 1, 2, 3, 3, 3, 1, 1}) == std::vector<int>{1, 2, 3, 1});
  CHECK(xi_compress(std::vector<int>{}).empty());
}

TEST_CASE("dominance diagnostics on a positive sequence", "[condc]") {
  ExactMatrix a = exact_from_ints({{2, 1}, {1, 1}});
  MatrixSequence seq(25, a);
  CutSequence c = CutSequence::every_step(26);
  DominanceOptions opt;
  opt.probes = {ExactMatrix::column({1, 0}), ExactMatrix::column({1, 3})};
  auto rep = dominance_diagnostics(seq, c, 0, 3, 25, opt);
  CHECK(rep.H == 1);
  CHECK(rep.ordering_ok);
  CHECK(rep.partition_ok);
  CHECK(rep.rate_ok);
  CHECK(rep.trapping_ok);
  CHECK(rep.bound_ok);
  // Perron direction of [[2,1],[1,1]] is (1+sqrt5)/2 : 1.
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(rep.V[0][0] == Catch::Approx(phi / (1 + phi)).margin(1e-9));
  CHECK(rep.steps.back().sigma_ratio < 1e-9);
}

#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/family.hpp>
#include <matprodlab/matrix.hpp>
#include <matprodlab/printed_tables.hpp>

#include <random>

using namespace mpl;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int hi, double zero_prob) {
  std::uniform_int_distribution<int> val(1, hi);
  std::bernoulli_distribution zero(zero_prob);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = zero(rng) ? 0 : val(rng);
  return m;
}

}  // namespace

TEST_CASE("product basics", "[exactmat]") {
  ExactMatrix a = exact_from_ints({{1, 2}, {3, 4}});
  CHECK(product(ExactMatrix::identity(2), a) == a);
  CHECK(product(a, ExactMatrix::zeros(2, 2)).is_zero_matrix());
  CHECK_THROWS_AS(product(a, ExactMatrix::zeros(3, 3)), std::invalid_argument);
  ExactMatrix r = exact_from_ints({{1, 2, 0}});
  CHECK_THROWS(ExactMatrix(2, 2) + r);
}

TEST_CASE("Kamae A(0) is idempotent", "[exactmat]") {
  ExactMatrix a0 = exact_from_ints({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  CHECK(product(a0, a0) == a0);
}

TEST_CASE("product agrees with the independent oracle", "[exactmat]") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    ExactMatrix a = random_matrix(rng, 4, 3, 9, 0.3), b = random_matrix(rng, 3, 5, 9, 0.3);
    a(0, 0) = rational(1, 3 + t % 5);
    auto expect = oracle::mul(bridge::to_oracle(a), bridge::to_oracle(b));
    CHECK(bridge::to_oracle(product(a, b)) == expect);
  }
}

TEST_CASE("word products reproduce the printed tables", "[exactmat]") {
  for (const auto& p : printed_products) {
    ExactMatrix m = word_product(beta_generators(), p.word);
    auto o = oracle::word(oracle::beta_gens(), std::string(p.word));
    CHECK(bridge::to_oracle(m) == o);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) CHECK(m(i, j) == p.entries[i][j]);
  }
}

TEST_CASE("support patterns", "[exactmat]") {
  ExactMatrix v = ExactMatrix::column({0, 3, 0});
  CHECK(support_pattern(v).str() == "010");
  CHECK(support_pattern(ExactMatrix::zeros(3, 1)).is_zero());
  // Column 5 of A(2^k) is (k, 0, k-1, k, 1, 0, 0): the entry k-1 vanishes at k = 1.
  CHECK(column_support(beta_generators()[2], 4).str() == "1001100");
  for (int k = 2; k <= 6; ++k) {
    ExactMatrix m = word_product(beta_generators(), std::string(static_cast<std::size_t>(k), '2'));
    CHECK(column_support(m, 4).str() == "1011100");
  }
}

TEST_CASE("compare_patterns", "[exactmat]") {
  auto p = SupportPattern::from_string("100"), q = SupportPattern::from_string("110");
  CHECK(compare_patterns(p, q) == PatternOrder::LE);
  CHECK(compare_patterns(q, p) == PatternOrder::GE);
  CHECK(compare_patterns(p, p) == PatternOrder::EQ);
  CHECK(compare_patterns(SupportPattern::from_string("101"), SupportPattern::from_string("011")) ==
        PatternOrder::INCOMPARABLE);
  CHECK_THROWS(compare_patterns(p, SupportPattern::from_string("1000")));
}

TEST_CASE("col_pattern_count", "[exactmat]") {
  CHECK(col_pattern_count(ExactMatrix::identity(5)) == 5);
  CHECK(col_pattern_count(ExactMatrix::zeros(4, 4)) == 0);
  ExactMatrix m = word_product(beta_generators(), "11111");
  // Recomputed: four equal nonzero column supports, three zero columns.
  CHECK(col_pattern_count(m) == oracle::ncol(bridge::to_oracle(m)));
  CHECK(col_pattern_count(m) == 1);
}

TEST_CASE("norm1", "[exactmat]") {
  CHECK(norm1(ExactMatrix::column({rational(1, 2), rational(1, 2)})) == 1);
  CHECK(norm1(ExactMatrix::zeros(3, 1)) == 0);
  ExactMatrix m = word_product(beta_generators(), "000100");
  CHECK(bridge::to_q(norm1(m)) == oracle::total(oracle::word(oracle::beta_gens(), "000100")));
  CHECK(norm1(m) == 19);
}

TEST_CASE("submultiplicativity and support determinism", "[exactmat]") {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    ExactMatrix a = random_matrix(rng, 3, 4, 5, 0.4), b = random_matrix(rng, 4, 3, 5, 0.4);
    CHECK(norm1(product(a, b)) <= norm1(a) * norm1(b));
    ExactMatrix x = random_matrix(rng, 4, 1, 5, 0.5), y(4, 1);
    for (std::size_t i = 0; i < 4; ++i) y[i] = sgn(x[i]) ? rational(static_cast<long>(i) + 2) : rational(0);
    CHECK(support_pattern(product(a, x)) == support_pattern(product(a, y)));
  }
}

TEST_CASE("exact rank", "[exactmat]") {
  CHECK(rank(ExactMatrix::identity(4)) == 4);
  CHECK(rank(exact_from_ints({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})) == 1);
  for (const char* w : {"001001", "100100", "1001001", "11111", "2020"}) {
    ExactMatrix m = word_product(beta_generators(), w);
    CHECK(rank(m) == oracle::rank(bridge::to_oracle(m)));
  }
}

TEST_CASE("rational parsing is canonical", "[exactmat]") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/langw.hpp>

#include <set>

using namespace mpl;

namespace {

const std::vector<std::vector<int>> kT2 = {
    {1, 0, 1, 1, 1, 0, 0}, {1, 1, 1, 0, 1, 1, 0}, {1, 1, 1, 0, 1, 1, 1}, {1, 1, 1, 1, 1, 0, 0}};

bool oracle_t2(const std::vector<int>& s) {
  for (const auto& t : kT2)
    if (t == s) return true;
  return false;
}

// Key-lemma properties computed on the oracle product.
bool oracle_key_lemma(const std::string& w) {
  auto a = oracle::word(oracle::beta_gens(), w);
  bool i = oracle_t2(oracle::col_support(a, 0)) || oracle_t2(oracle::col_support(a, 2)) ||
           oracle_t2(oracle::col_support(a, 4));
  return i && oracle::ncol(a) <= 2 && oracle::h1(a);
}

std::string ternary(std::size_t idx, std::size_t len) {
  std::string s;
  for (std::size_t t = 0; t < len; ++t, idx /= 3) s.push_back(static_cast<char>('0' + idx % 3));
  return s;
}

}  // namespace

TEST_CASE("W enumeration and parsing", "[langw]") {
  CHECK(w_enumerate(1).size() == 13);
  CHECK(w_enumerate(64).size() == 1 + 12 * 64);
  CHECK(make_wword(7, 1).render() == "10102");
  CHECK(make_wword(12, 3).render() == "1222");
  CHECK(make_wword(0, 0).render() == "1");
  std::set<std::string> seen;
  for (const auto& w : w_enumerate(64)) {
    auto r = w.render();
    CHECK(seen.insert(r).second);
    auto back = parse_wword(r);
    REQUIRE(back);
    CHECK(*back == w);
  }
  CHECK_FALSE(parse_wword("0102"));
  CHECK_FALSE(parse_wword("2"));
  CHECK_THROWS(make_wword(3, 0));
}

TEST_CASE("Right-greedy decomposition", "[langw]") {
  auto one = w_decompose("1");
  CHECK(one.head.empty());
  REQUIRE(one.body.size() == 1);
  CHECK(one.body[0].render() == "1");

  auto s = w_decompose("0102");
  CHECK(s.strict_suffix_only());
  CHECK(s.head == "0102");
  CHECK(s.head_kind == HeadKind::ZERO_ONE_ZERO_TWOS);

  auto d = w_decompose("110100102");
  CHECK(d.render() == "110100102");
  CHECK_FALSE(d.body.empty());

  std::set<HeadKind> kinds;
  for (std::size_t len = 0; len <= 12; ++len) {
    std::size_t count = 1;
    for (std::size_t t = 0; t < len; ++t) count *= 3;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::string w = ternary(idx, len);
      auto dec = w_decompose(w);
      REQUIRE(dec.render() == w);
      for (const auto& b : dec.body) REQUIRE(parse_wword(b.render()));
      // the head extends to a W-word on the left
      if (!dec.head.empty()) {
        bool extends = false;
        for (const auto& x : w_enumerate(len + 2)) {
          auto r = x.render();
          if (r.size() > dec.head.size() && r.compare(r.size() - dec.head.size(), dec.head.size(), dec.head) == 0)
            extends = true;
        }
        REQUIRE(extends);
      }
      kinds.insert(dec.head_kind);
    }
  }
  CHECK(kinds.size() == 7);
  // concatenations of W-words decompose back into the same words
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto ws = random_wwords(rng, 20, 5);
    auto dec = w_decompose(concat(ws));
    CHECK(dec.head.empty());
    CHECK(dec.body == ws);
  }
}

TEST_CASE("Per-family bounds over the language", "[langw]") {
  auto rep = verify_family_bounds(64);
  REQUIRE(rep.rows.size() == 13);
  for (const auto& row : rep.rows) {
    INFO(w_families[row.family].tag);
    CHECK(row.Lambda_ok);
    CHECK(row.max_Lambda <= rational(w_families[row.family].Lambda_bound));
    CHECK(row.affine == (row.family != 0));
  }
  // A(1) in H2(2), A(202^k) in H2(5)
  CHECK(rep.rows[0].max_Lambda == 2);
  CHECK(rep.rows[11].max_Lambda <= 5);
  // The H3(5) claim fails for 002 only: min_lambda(A(002)) = 6.
  auto a002 = oracle::word(oracle::beta_gens(), "002");
  CHECK(oracle::lambda(a002) == 6);
  CHECK(min_lambda(word_product(beta_generators(), "002")) == 6);
  for (const auto& row : rep.rows) {
    if (row.family == 5) {
      CHECK_FALSE(row.lambda_ok);
      CHECK(row.witness == "002: min_lambda = 6");
    } else {
      CHECK(row.lambda_ok);
      CHECK(row.certified);
    }
  }
  for (std::size_t k = 2; k <= 64; ++k) CHECK(min_lambda(word_product(beta_generators(), "00" + std::string(k, '2'))) <= 5);
  // A(2^k) alone has unbounded Lambda
  rational prev(0);
  for (std::size_t k = 4; k <= 64; k *= 2) {
    rational L = min_Lambda(word_product(beta_generators(), std::string(k, '2')));
    CHECK(L > prev);
    prev = L;
  }
  CHECK(prev >= 32);
  // oracle cross-check of the per-family maxima for small k
  for (std::size_t f = 1; f < w_families.size(); ++f) {
    oracle::Q best = 0;
    for (std::size_t k = 1; k <= 8; ++k) best = std::max(best, oracle::Lambda(oracle::word(oracle::beta_gens(), WWord{f, k}.render())));
    CHECK(best <= w_families[f].Lambda_bound);
  }
}

TEST_CASE("T2 and the printed product tables", "[langw]") {
  auto t2 = t2_set();
  CHECK(t2.size() == 4);
  for (const auto& p : t2) {
    CHECK(p[0]);
    CHECK(p[2]);
    CHECK(p[4]);
  }
  CHECK(std::set<std::string>{t2[0].str(), t2[1].str(), t2[2].str(), t2[3].str()}.size() == 4);

  auto rep = verify_golden_products();
  CHECK(rep.ok());
  CHECK(rep.printed.size() == 34);
  for (const auto& p : printed_products) {
    auto a = oracle::word(oracle::beta_gens(), std::string(p.word));
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) CHECK(a[i][j] == p.entries[i][j]);
    CHECK(oracle_key_lemma(std::string(p.word)));
  }
  // A(11111) as printed, and the shorter powers of 1 fail the properties
  auto a5 = BigIntMatrix::of_word("11111").to_exact();
  CHECK(a5 == exact_from_ints({{3, 0, 3, 2, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {1, 0, 3, 3, 1, 0, 0},
                               {1, 0, 1, 3, 2, 0, 0}, {2, 0, 1, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                               {0, 0, 0, 0, 0, 0, 0}}));
  CHECK(key_lemma_properties(BigIntMatrix::of_word("11111")).ok());
  for (std::size_t k = 1; k <= 4; ++k) CHECK_FALSE(key_lemma_properties(BigIntMatrix::of_word(std::string(k, '1'))).ok());
  for (const auto& w : key_lemma_factor_words()) CHECK(oracle_key_lemma(w));
  CHECK(key_lemma_factor_words().size() == 55 + 45 + 4 + 1);
}

TEST_CASE("Perturbed table entry is reported by word", "[langw]") {
  std::vector<PrintedProduct> table(printed_products.begin(), printed_products.end());
  table[3].entries[4][0] += 1;
  auto rep = verify_golden_products(table);
  CHECK_FALSE(rep.ok());
  auto f = rep.failures();
  REQUIRE(f.size() == 1);
  CHECK(f[0].rfind(std::string(table[3].word) + ":", 0) == 0);
}

TEST_CASE("Key lemma on concatenations", "[langw]") {
  auto r = verify_key_lemma(std::string(13, '1'));
  CHECK(r.precondition);
  CHECK(r.props.ok());
  CHECK_THROWS(verify_key_lemma(std::string(12, '1')));
  auto sweep = key_lemma_sweep(10000, 4, 2024);
  CHECK(sweep.ok());
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) CHECK(oracle_key_lemma(concat(random_wwords(rng, 13, 4))));
  auto prop = key_lemma_propagation();
  CHECK(prop.ok());
  CHECK(prop.qualifying > 0);
}

TEST_CASE("Gamma1 and the synchronization lemma", "[langw]") {
  auto g = build_gamma1();
  CHECK(g.violations.empty());
  auto r = verify_support_classes(g);
  CHECK(r.ok());
  CHECK(r.no_saturated_v1);
  CHECK(r.v2_count == 4);
  std::vector<Mask> t2(t2_masks().begin(), t2_masks().end());
  std::sort(t2.begin(), t2.end());
  CHECK(g.v2_supports() == t2);
  // the class {(1,0,1,1,0,0,0), (1,0,2,1,0,0,0)} appears as (1,0,2,1,0,0,0)
  int v = g.index_of(mask_from_string("1011000"));
  REQUIRE(v >= 0);
  CHECK(g.vertices[v].sup == IntVec{1, 0, 2, 1, 0, 0, 0});
  // images of V1 maxima may exceed 2 (they then land in V2)
  CHECK_FALSE(r.v1_images_bounded);
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    if (g.vertices[k].in_V2) continue;
    for (std::size_t d = 0; d < 3; ++d) {
      IntVec y = apply_digit(d, g.vertices[k].sup);
      if (*std::max_element(y.begin(), y.end()) > 2) CHECK(in_t2(mask_of(y)));
    }
  }
  CHECK(synchronization_check());
  CHECK(synchronizes("000"));
  for (std::string w : {"00", "01", "11", "2"}) CHECK(synchronizes_path(w));
  CHECK_FALSE(synchronizes("01"));
  CHECK(gamma1_dot(g).find("(*,0,*,*,*,0,0)") != std::string::npos);
}

TEST_CASE("Gamma2 doubling graph", "[langw]") {
  auto g = build_gamma2();
  auto c = check_gamma2(g);
  CHECK(c.ok());
  for (const auto& v : g.vertices)
    for (int x : v) CHECK(x <= 2);
  auto off = gamma2_offender_search(g);
  CHECK_FALSE(off.unbounded);
  CHECK(off.max_offender_blocks == 11);
  CHECK(off.paths_over_blocks == 12);
  CHECK(off.extremal_in_longest);
  CHECK(off.extremal_endpoints_ok);
  CHECK_FALSE(off.printed_label_offends);
  CHECK(off.longest_offenders.size() == 48);
  // the exclusion under the other orientation gives the same bound
  auto other = gamma2_offender_search(g, 16, 40, "001001");
  CHECK(other.max_offender_blocks == 11);
  CHECK(gamma2_dot(g).find("color=red") != std::string::npos);
}

TEST_CASE("Doubling on words and the rank-one factor", "[langw]") {
  auto g = build_gamma2();
  auto d = doubling_check(g, std::string(13, '1'));
  CHECK(d.ok());
  auto with_forbidden = doubling_check(g, "001001" + std::string(13, '1'));
  CHECK(with_forbidden.contains_forbidden);
  CHECK_FALSE(with_forbidden.ok());
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 300) {
    auto w = concat(random_wwords(rng, 13, 4));
    if (w.find("001001") != std::string::npos) continue;
    ++tested;
    auto r = doubling_check(g, w);
    CHECK(r.paths_end_red);
    CHECK(r.algebraic);
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    std::string w = extremal_factor(k) + std::string(12, '1');
    CHECK(doubling_check(g, w).ok());
  }
  // A(100100) is rank one; A(001001) has rank two.
  CHECK(oracle::rank(oracle::word(oracle::beta_gens(), "100100")) == 1);
  CHECK(oracle::rank(oracle::word(oracle::beta_gens(), "001001")) == 2);
  CHECK(rank(word_product(beta_generators(), "001001")) == 2);
}

TEST_CASE("long concatenations stay in H1 with lambda below 3/4", "[langw]") {
  auto rep = verify_concatenations(200, 4, 77);
  CHECK(rep.ok());
  CHECK(rep.proof_constant == rational(189, 256));
  CHECK(rep.proof_constant < rational(3, 4));
  CHECK(rep.structured_samples >= 49);
  auto ones = BigIntMatrix::of_word(std::string(130, '1')).to_exact();
  CHECK(in_H1(ones));
  CHECK(min_lambda(ones) <= rational(3, 4));
  // an instance with two column patterns, checked on the oracle
  std::string p;
  for (int t = 0; t < 130; ++t) p += "0100";
  auto a = oracle::word(oracle::beta_gens(), p);
  CHECK(oracle::ncol(a) == 2);
  CHECK(oracle::lambda(a) <= oracle::Q(3) / 4);
  CHECK(oracle::h1(a));
}

TEST_CASE("Row non-vanishing automaton", "[langw]") {
  auto r1 = row_nonvanishing_check(0);
  CHECK_FALSE(r1.zero_reachable);
  CHECK(r1.classes.size() <= 128);
  auto r5 = row_nonvanishing_check(4);
  CHECK_FALSE(r5.zero_reachable);
  for (std::size_t len = 1; len <= 7; ++len) {
    std::size_t count = 1;
    for (std::size_t t = 0; t < len; ++t) count *= 3;
    for (std::size_t idx = 0; idx < count; ++idx) {
      auto a = oracle::word(oracle::beta_gens(), ternary(idx, len));
      oracle::Q s = 0;
      for (const auto& x : a[0]) s += x;
      REQUIRE(s > 0);
    }
  }
}

TEST_CASE("Condition (C) certificate", "[langw]") {
  std::string w;
  for (int t = 0; t < 270; ++t) w += "12";
  auto c = condition_c_certificate(w, 0);
  CHECK(c.ok());
  CHECK(c.cuts.cuts() == std::vector<std::size_t>{0, 0, 260, 520});
  CHECK(c.witness.lambda == rational(3, 4));
  CHECK(c.witness.max_lambda_seen <= rational(3, 4));

  std::string w2;
  for (int t = 0; t < 140; ++t) w2 += "10102" + std::string("2000");
  auto c2 = condition_c_certificate(w2, 0);
  CHECK(c2.ok());
  CHECK_THROWS_AS(condition_c_certificate(std::string(200, '1'), 0), NeedsMoreDigitsW);

  auto hc = head_constants();
  CHECK(hc.Lambda0 == 11);
  CHECK(hc.lambda0 == 4);
  for (const auto& h : head_prefix_words()) CHECK((h.empty() || classify_head(h)));
}

TEST_CASE("Uniform convergence scan", "[langw]") {
  auto s = uniform_convergence_scan(beta_R(), {4, 6, 8}, 4, 8, 40);
  CHECK(s.support.failures == 0);
  CHECK(s.cauchy_gap[2].second < s.cauchy_gap[0].second);
  CHECK(s.gaps_shrink);
  // the 1/n rate along the constant tails
  CHECK(s.err_zero > 0.04);
  CHECK(s.err_zero < 0.05);
  CHECK(s.err_two > 0.02);
  CHECK(s.err_two < 0.025);
  auto s80 = uniform_convergence_scan(beta_R(), {}, 4, 4, 80);
  CHECK(s80.err_zero / s.err_zero == Catch::Approx(0.5).margin(0.05));
  CHECK(s80.err_two / s.err_two == Catch::Approx(0.5).margin(0.05));
  // depth 9 and 10 exceed depth 8 slightly: the sup is not monotone
  double g8 = cauchy_gap_scan(beta_R(), 8, 4);
  double g10 = cauchy_gap_scan(beta_R(), 10, 4);
  CHECK(g10 > g8);
  CHECK(g10 < 0.16);
}

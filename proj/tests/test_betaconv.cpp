#include "bridge.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/betaconv.hpp>

#include <algorithm>
#include <cmath>

using namespace mpl;

namespace {

using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<80>>;

// Real root of x^3 - 2x^2 + x - 1 by Newton iteration in 80-digit decimals.
Dec oracle_beta() {
  Dec x = 1.75;
  for (int k = 0; k < 60; ++k) x -= (x * x * x - 2 * x * x + x - 1) / (3 * x * x - 4 * x + 1);
  return x;
}

// Atoms of the truncated Bernoulli convolution (beta - 1) sum eps_k beta^-k, k <= N.
struct TruncatedConvolution {
  std::vector<double> atoms;
  double tail = 0;

  explicit TruncatedConvolution(std::size_t N) {
    double b = static_cast<double>(oracle_beta());
    atoms = {0.0};
    for (std::size_t k = 1; k <= N; ++k) {
      std::size_t m = atoms.size();
      double step = (b - 1) * std::pow(b, -static_cast<double>(k));
      for (std::size_t i = 0; i < m; ++i) atoms.push_back(atoms[i] + step);
    }
    std::sort(atoms.begin(), atoms.end());
    tail = std::pow(b, -static_cast<double>(N));
  }

  // Lower and upper bounds for the mass of [lo, hi).
  std::pair<double, double> mass(double lo, double hi) const {
    auto first_in = std::lower_bound(atoms.begin(), atoms.end(), lo);
    auto last_in = std::lower_bound(atoms.begin(), atoms.end(), hi - tail);
    auto first_touch = std::lower_bound(atoms.begin(), atoms.end(), lo - tail);
    auto last_touch = std::lower_bound(atoms.begin(), atoms.end(), hi);
    double n = static_cast<double>(atoms.size());
    double inside = last_in > first_in ? static_cast<double>(last_in - first_in) : 0.0;
    return {inside / n, static_cast<double>(last_touch - first_touch) / n};
  }
};

// Interval of a ternary word computed independently in decimals.
std::pair<double, double> oracle_interval(const std::string& w) {
  static const char* blocks[] = {"0", "10", "1100"};
  std::string bin;
  for (char c : w) bin += blocks[c - '0'];
  Dec b = oracle_beta(), p = 1, s = 0;
  for (char c : bin) {
    p /= b;
    if (c == '1') s += p;
  }
  return {static_cast<double>(s), static_cast<double>(s + p)};
}

}  // namespace

TEST_CASE("cubic field arithmetic", "[betaconv]") {
  CubicFieldElement b = CubicFieldElement::beta();
  CHECK(b * b * b == CubicFieldElement(2) * b * b - b + CubicFieldElement(1));
  CubicFieldElement inv = b.inverse();
  CHECK(inv * b == CubicFieldElement(1));
  CHECK(inv + inv * inv + cubic_pow(inv, 4) == CubicFieldElement(1));
  CHECK(CubicFieldElement(rational(7, 4)) < b);
  CHECK(b < CubicFieldElement(rational(9, 5)));
  CHECK(b.decimal(30).substr(0, 20) == oracle_beta().str(25).substr(0, 20));
  CHECK_THROWS(CubicFieldElement().inverse());
}

TEST_CASE("greedy digits agree with a decimal oracle", "[betaconv]") {
  Dec b = oracle_beta();
  for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {1, 3}, {5, 7}, {99, 100}}) {
    Dec r = Dec(p) / q;
    std::string expect;
    for (int k = 0; k < 40; ++k) {
      r *= b;
      if (r >= 1) {
        expect += '1';
        r -= 1;
      } else {
        expect += '0';
      }
    }
    std::string got = parry_digits(CubicFieldElement(rational(p, q)), 40);
    CHECK(got == expect);
    CHECK(is_admissible(got));
  }
  CHECK_THROWS(parry_digits(CubicFieldElement(1), 3));
}

TEST_CASE("admissibility and recoding", "[betaconv]") {
  CHECK(is_admissible("1100100"));
  CHECK_FALSE(is_admissible("1101"));
  CHECK_FALSE(is_admissible("0111"));
  CHECK(is_admissible("011"));
  for (const auto& w : all_words(3, 6)) {
    std::string b = expand(w);
    CHECK(is_admissible(b));
    CHECK(recode(b) == w);
  }
  CHECK_THROWS_AS(recode("101"), IncompleteBlock);
  CHECK_THROWS_AS(recode("110"), IncompleteBlock);
  CHECK_THROWS(recode("1110"));
}

TEST_CASE("vertex closure and incidence matrices", "[betaconv]") {
  auto v = vertex_closure();
  auto ref = reference_vertices();
  REQUIRE(v.size() == 7);
  for (const auto& x : ref) CHECK(std::count(v.begin(), v.end(), x) == 1);
  Family inc = incidence_matrices(ref);
  for (std::size_t e = 0; e < 3; ++e) CHECK(inc[e] == beta_generators()[e]);
}

TEST_CASE("R is a fixed vector and masses are additive", "[betaconv]") {
  const Family& m = beta_weighted();
  CHECK(product(m[0] + m[1] + m[2], beta_R()) == beta_R());
  CHECK(norm1(beta_R()) == rational(59, 20));
  for (std::size_t n = 1; n <= 5; ++n) {
    rational total = 0;
    for (const auto& w : all_words(3, n)) {
      rational mu = mu_cylinder(w);
      total += mu;
      CHECK(mu == mu_cylinder_vertex_form(w));
      CHECK(mu == mu_cylinder(w + "0") + mu_cylinder(w + "1") + mu_cylinder(w + "2"));
      CHECK(nu_cylinder(w) == nu_cylinder(w + "0") + nu_cylinder(w + "1") + nu_cylinder(w + "2"));
    }
    CHECK(total == 1);
  }
}

TEST_CASE("cylinder masses match the truncated convolution", "[betaconv]") {
  TruncatedConvolution conv(20);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& w : all_words(3, n)) {
      auto [lo, hi] = oracle_interval(w);
      auto iv = beta_interval(w);
      CHECK(std::abs(iv.left.to_double() - lo) < 1e-12);
      CHECK(std::abs((iv.left + iv.length).to_double() - hi) < 1e-12);
      auto [m0, m1] = conv.mass(lo, hi);
      double mu = mu_cylinder(w).get_d();
      CHECK(mu >= m0 - 1e-12);
      CHECK(mu <= m1 + 1e-12);
    }
}

TEST_CASE("ratio bounds hold on short words", "[betaconv]") {
  auto inf = functional_infima(8);
  CHECK(inf.F > 0);
  CHECK(inf.G > 0);
  CHECK(inf.H > 0);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& w : all_words(3, n)) {
      auto d = ratio_diagnostics(w, inf);
      INFO(w << " " << d.rule << " " << d.ratio.get_d() << " " << d.bound);
      CHECK(d.ok);
    }
}

TEST_CASE("scaling identities", "[betaconv]") {
  for (const auto& id : scaling_identities()) {
    INFO(id.name);
    CHECK(id.holds);
  }
}

TEST_CASE("limits along constant words", "[betaconv]") {
  std::vector<double> v0{0, 0.2, 0.2, 0, 0.2, 0.2, 0.2}, v2{1.0 / 3, 0, 1.0 / 3, 1.0 / 3, 0, 0, 0};
  auto err = [](const ExactMatrix& p, const std::vector<double>& v) {
    double e = 0;
    for (std::size_t i = 0; i < 7; ++i) e = std::max(e, std::abs(p[i].get_d() - v[i]));
    return e;
  };
  CHECK(pi_constant('0', 40, beta_R()) == pi_n(std::string(40, '0'), beta_R()));
  // The approach is only of order 1/n: n times the error stays bounded.
  for (unsigned long n : {40ul, 400ul, 4000ul, 40000ul}) {
    double e0 = err(pi_constant('0', n, beta_R()), v0), e2 = err(pi_constant('2', n, beta_R()), v2);
    INFO(n << " " << e0 << " " << e2);
    CHECK(e0 * static_cast<double>(n) < 0.81);
    CHECK(e2 * static_cast<double>(n) < 0.34);
    CHECK(e0 * static_cast<double>(n) > 0.7);
  }
  CHECK(err(pi_constant('0', 40, beta_R()), v0) > 1e-6);
  auto scan = support_scan(8, {0, 2, 4});
  CHECK(scan.words == 6561);
  CHECK(scan.failures == 0);
}

TEST_CASE("weak Gibbs statistic at small depth", "[betaconv]") {
  auto rep = psi_and_weak_gibbs(8, 5);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.rows.back().cylinders == 6561);
  for (const auto& r : rep.rows) CHECK(std::isfinite(r.max_abs_log_ratio_over_n));
}

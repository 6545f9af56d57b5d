#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/kamae.hpp>

#include <cmath>

using namespace mpl;

TEST_CASE("Kamae matrices and blocks", "[kamae]") {
  const Family& a = kamae_family();
  CHECK(product(a[0], a[0]) == a[0]);
  CHECK_FALSE(in_H1(a[0]));
  for (unsigned long k = 0; k <= 12; ++k) {
    CHECK(product(product(a[0], matrix_power(a[1], k)), a[0]) == kamae_B(k));
    long m = static_cast<long>(k);
    CHECK(matrix_power(a[1], k) == exact_from_ints({{1, 0, m}, {0, 1, m}, {0, 0, 1}}));
    if (k >= 1) CHECK(min_Lambda(matrix_power(a[1], k)) >= rational(2 * m + 1));
  }
  CHECK(kamae_B(0) == a[0]);
  CHECK(product(kamae_B(1), kamae_B(2)) == kamae_B(7));
  CHECK(kamae_alpha({1, 2}) == 7);
  CHECK(product(product(kamae_B(2), kamae_B(3)), kamae_B(1)) == kamae_B(kamae_alpha({2, 3, 1})));
  for (unsigned long k = 1; k <= 20; ++k) {
    auto p = profile(kamae_B(k));
    CHECK(p.in_H1);
    CHECK(p.lambda_min < 1);
    CHECK(p.Lambda_min <= 6);
  }
}

TEST_CASE("Kamae measure normalization", "[kamae]") {
  CHECK(kamae_measure_raw("") == 3);
  CHECK(kamae_measure_raw("0") == rational(4, 3));
  CHECK(kamae_measure("") == 1);
  for (std::size_t n = 0; n <= 8; ++n)
    for (const auto& w : all_words(2, n)) {
      CHECK(kamae_measure(w) == kamae_measure(w + "0") + kamae_measure(w + "1"));
      CHECK(kamae_measure(w) == measure_cylinder(kamae_representation(), w));
    }
}

TEST_CASE("Kamae limit vectors", "[kamae]") {
  ExactMatrix u = ExactMatrix::ones(3);
  CHECK(kamae_V("0") == ExactMatrix::column({rational(1, 4), rational(1, 4), rational(1, 2)}));
  for (unsigned long a = 0; a <= 8; ++a) {
    std::string y = std::string(a, '1') + "0";
    rational t = kamae_theta(a);
    ExactMatrix expect = ExactMatrix::column({t, t, 1 - 2 * t});
    for (const auto& tail : all_words(2, 4)) {
      std::string z = y + tail;
      for (std::size_t n = a + 1; n <= z.size(); ++n) CHECK(pi_n(kamae_family(), z.substr(0, n), u) == expect);
    }
    CHECK(kamae_V(y + "1101") == expect);
  }
  CHECK(kamae_V_tail1("") == ExactMatrix::column({rational(1, 2), rational(1, 2), 0}));
  CHECK(kamae_V_tail0("1") == pi_n(kamae_family(), "10", u));
  CHECK_THROWS_AS(kamae_V("111"), NeedsMoreDigits);
  // Along w1bar the normalized vectors approach V(w1bar).
  ExactMatrix lim = kamae_V_tail1("01");
  ExactMatrix far = pi_n(kamae_family(), "01" + std::string(400, '1'), u);
  CHECK(norm1(far - lim).get_d() < 1e-2);
}

TEST_CASE("Kamae potential table", "[kamae]") {
  auto rep = kamae_representation();
  auto close = [&](const std::string& y, double phi) { return std::abs(n_step_potential(rep, y, y.size()).value - phi); };
  for (unsigned long a = 1; a <= 10; ++a) {
    std::string z = "0" + std::string(a, '1') + "0";
    std::string o = std::string(a, '1') + "0";
    CHECK(kamae_classify(z).kind == KamaeCase::ZERO_ONES_ZERO);
    CHECK(kamae_classify(o).kind == KamaeCase::ONES_ZERO);
    CHECK(kamae_phi(z) == Catch::Approx(std::log(1.0 / 3) + std::log((2.0 * a + 1) / (a + 1))));
    CHECK(kamae_phi(o) == Catch::Approx(std::log(1.0 / 3) + std::log((a + 1.0) / a)));
    for (const auto& tail : {std::string(39, '0'), std::string(39, '1')}) {
      CHECK(close((z + tail).substr(0, 40), kamae_phi(z)) < 1e-12);
      CHECK(close((o + tail).substr(0, 40), kamae_phi(o)) < 1e-12);
    }
  }
  CHECK(close("00" + std::string(38, '1'), std::log(1.0 / 3)) < 1e-12);
  // The two points converge only at rate 1/n.
  double e01 = close("0" + std::string(39, '1'), std::log(2.0 / 3));
  double e1 = close(std::string(40, '1'), std::log(1.0 / 3));
  CHECK(e01 > 1e-3);
  CHECK(e01 < 2e-2);
  CHECK(e1 > 1e-3);
  CHECK(e1 < 3e-2);
  CHECK(close("0" + std::string(3999, '1'), std::log(2.0 / 3)) < 2e-4);
  CHECK_THROWS_AS(kamae_classify("0111"), NeedsMoreDigits);
}

TEST_CASE("Kamae Cauchy majorants", "[kamae]") {
  ExactMatrix u = ExactMatrix::ones(3);
  for (unsigned long n = 1; n <= 12; ++n) {
    auto m = kamae_cauchy_majorants(n);
    std::string ones(n, '1');
    double gap = cauchy_uniform_scan(kamae_family(), u, ones, 4);
    CHECK(gap <= std::max(m.all_ones, m.mixed).get_d() + 1e-15);
    if (n >= 2) CHECK(m.mixed < kamae_cauchy_majorants(n - 1).mixed);
  }
  for (unsigned long a = 0; a <= 4; ++a)
    CHECK(cauchy_uniform_scan(kamae_family(), u, std::string(a, '1') + "0", 5) == 0.0);
}

#include "bridge.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/betaconv.hpp>
#include <matprodlab/kamae.hpp>
#include <matprodlab/repmeasure.hpp>

#include <random>

using namespace mpl;

namespace {

Family counterexample_family() {
  ExactMatrix a1 = exact_from_ints({{1, 0, 1}, {0, 0, 0}, {0, 0, 0}});
  a1(1, 0) = rational(1, 2);
  return {exact_from_ints({{1, 0, 1}, {0, 1, 0}, {0, 0, 0}}), a1};
}

ExactMatrix third3() { return ExactMatrix::ones(3) * rational(1, 3); }

std::string random_word(std::mt19937& rng, std::size_t alphabet, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, alphabet - 1);
  std::string w;
  for (std::size_t k = 0; k < n; ++k) w.push_back(static_cast<char>('0' + d(rng)));
  return w;
}

}  // namespace

TEST_CASE("representation invariants are validated", "[repmeasure]") {
  Family f = kamae_family();
  CHECK_THROWS(LinearRepresentation(f, third3(), ExactMatrix::ones(3)));
  CHECK_NOTHROW(kamae_representation());
  Family scaled{f[0] / rational(3), f[1] / rational(3)};
  CHECK_THROWS(LinearRepresentation(scaled, third3(), ExactMatrix::ones(3) * rational(2)));
  CHECK_THROWS(LinearRepresentation(scaled, ExactMatrix::ones(3), ExactMatrix::ones(3)));
}

TEST_CASE("cylinder measures are additive", "[repmeasure]") {
  auto rep = kamae_representation();
  CHECK(measure_cylinder(rep, "") == 1);
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::string w = random_word(rng, 2, 1 + t % 10);
    CHECK(measure_cylinder(rep, w) == measure_cylinder(rep, w + "0") + measure_cylinder(rep, w + "1"));
    // Independent evaluation through the oracle.
    oracle::Mat m = oracle::identity(3);
    for (char c : w) m = oracle::mul(m, bridge::to_oracle(kamae_family()[c - '0']));
    oracle::Q denom = 3;
    for (std::size_t k = 0; k < w.size(); ++k) denom *= 3;
    oracle::Q expect = oracle::total(m) / denom;
    CHECK(bridge::to_q(measure_cylinder(rep, w)) == expect);
  }
}

TEST_CASE("shift cocycle reproduces cylinder masses", "[repmeasure]") {
  auto rep = kamae_representation();
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& w : all_words(2, n)) {
      rational prod = 1;
      for (std::size_t k = 0; k < n; ++k) prod *= n_step_potential(rep, w.substr(k), n - k).ratio;
      CHECK(prod == measure_cylinder(rep, w));
    }
}

TEST_CASE("potential of a one-dimensional product representation", "[repmeasure]") {
  Family f{exact_from_ints({{1}}), exact_from_ints({{1}})};
  f[0] = f[0] * rational(1, 3);
  f[1] = f[1] * rational(2, 3);
  LinearRepresentation rep(f, exact_from_ints({{1}}), exact_from_ints({{1}}));
  for (const auto& w : all_words(2, 5))
    CHECK(n_step_potential(rep, w, 5).ratio == (w[0] == '0' ? rational(1, 3) : rational(2, 3)));
  CHECK(n_step_potential(rep, "1", 1).ratio == rational(2, 3));
}

TEST_CASE("normalized vectors and Omega_R", "[repmeasure]") {
  Family f = counterexample_family();
  for (std::size_t n = 1; n <= 8; ++n) {
    ExactMatrix p = pi_n(f, std::string(n - 1, '0') + "1", third3());
    CHECK(p == ExactMatrix::column({rational(4, 5), rational(1, 5), 0}));
  }
  CHECK(pi_n(f, "", third3()) == third3());
  CHECK(pi_n(f, "0101", third3() * rational(7)) == pi_n(f, "0101", third3()));
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& w : all_words(2, n)) CHECK(omega_R_member(kamae_family(), third3(), w));
  for (const auto& w : all_words(3, 6)) CHECK(omega_R_member(beta_generators(), beta_R(), w));
  Family z{exact_from_ints({{0, 0}, {0, 0}}), exact_from_ints({{1, 0}, {0, 1}})};
  CHECK_FALSE(omega_R_member(z, ExactMatrix::column({rational(1, 2), rational(1, 2)}), "10"));
  CHECK_THROWS_AS(pi_n(z, "10", ExactMatrix::column({rational(1, 2), rational(1, 2)})), std::domain_error);
}

TEST_CASE("Cauchy scans", "[repmeasure]") {
  Family f = counterexample_family();
  rational witness = norm1(ExactMatrix::column({rational(4, 5), rational(1, 5), 0}) -
                           ExactMatrix::column({rational(2, 3), rational(1, 3), 0}));
  for (std::size_t n = 1; n <= 6; ++n)
    CHECK(cauchy_uniform_scan(f, third3(), std::string(n, '0'), 1) >= witness.get_d() - 1e-15);
  ExactMatrix p = exact_from_ints({{1, 1}, {1, 1}}) / rational(2);
  CHECK(cauchy_uniform_scan({p}, ExactMatrix::column({rational(1, 2), rational(1, 2)}), "00", 3) == 0.0);
}

TEST_CASE("power limits", "[repmeasure]") {
  auto p0 = power_limit(beta_generators()[0]);
  REQUIRE(p0.exact);
  CHECK(p0.C_exact == ExactMatrix::column({0, rational(1, 5), rational(1, 5), 0, rational(1, 5), rational(1, 5), rational(1, 5)}));
  CHECK(p0.D_exact == ExactMatrix::unit(7, 0));
  auto p2 = power_limit(beta_generators()[2]);
  REQUIRE(p2.exact);
  CHECK(p2.C_exact == ExactMatrix::column({rational(1, 3), 0, rational(1, 3), rational(1, 3), 0, 0, 0}));
  CHECK(p2.D_exact == ExactMatrix::unit(7, 4));
  auto idem = power_limit(exact_from_ints({{1, 1}, {1, 1}}));
  CHECK(idem.rank_one);
  CHECK(idem.squarings == 1);
  auto k0 = power_limit(kamae_family()[0]);
  CHECK(k0.converged);
  CHECK_FALSE(k0.rank_one);
  auto rot = power_limit(exact_from_ints({{0, 1}, {1, 0}}));
  CHECK_FALSE(rot.converged);
  // Distance to the rank-one limit decreases along powers.
  FloatMatrix cd(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) cd(i, j) = p0.C[i] * p0.D[j];
  double prev = 1e9;
  for (unsigned long n = 8; n <= 4096; n *= 2) {
    double d = norm1(to_float(normalized(matrix_power(beta_generators()[0], n))) - cd);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("pointwise and uniform condition checkers", "[repmeasure]") {
  auto r0 = check_pointwise_conditions(beta_generators(), beta_R(), "12", '0', 20, [](std::size_t n) { return n; });
  CHECK(r0.route == PointwiseRoute::S2);
  auto r2 = check_pointwise_conditions(beta_generators(), beta_R(), "01", '2', 20, [](std::size_t n) { return n; });
  CHECK(r2.route == PointwiseRoute::S2);
  Family pos{exact_from_ints({{1, 2}, {3, 1}}), exact_from_ints({{2, 1}, {1, 1}})};
  ExactMatrix half = ExactMatrix::column({rational(1, 2), rational(1, 2)});
  auto s1 = check_pointwise_conditions(pos, half, "0110", std::nullopt, 4, [](std::size_t n) { return n - 1; });
  CHECK(s1.route == PointwiseRoute::S1);
  auto u = check_uniform_conditions(pos, half, "01", 1, rational(100), 6);
  CHECK(u.ok());
  auto v = check_uniform_conditions(pos, half, "01", 1, rational(1), 6);
  CHECK_FALSE(v.U1_1);
}

TEST_CASE("Gibbs constants for the Kamae measure", "[repmeasure]") {
  auto rep = kamae_representation();
  auto phi = [](const std::string& y) { return kamae_phi(y); };
  auto g = gibbs_constants(rep, phi, 20, 12, '0');
  REQUIRE(g.log_K_over_n.size() == 20);
  for (std::size_t k = 14; k < 20; ++k) CHECK(g.log_K_over_n[k] <= g.log_K_over_n[k - 1]);
  Family f{exact_from_ints({{1}}), exact_from_ints({{1}})};
  f[0] = f[0] * rational(1, 2);
  f[1] = f[1] * rational(1, 2);
  LinearRepresentation iid(f, exact_from_ints({{1}}), exact_from_ints({{1}}));
  auto flat = gibbs_constants(iid, [](const std::string&) { return std::log(0.5); }, 6, 4, '0');
  for (double x : flat.log_K_over_n) CHECK(x < 1e-15);
}

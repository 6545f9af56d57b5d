#pragma once

#include "family.hpp"
#include "hclass.hpp"
#include "repmeasure.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

inline const Family& kamae_family() {
  static const Family f{exact_from_ints({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}),
                        exact_from_ints({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}})};
  return f;
}

// ||A(w)|| / 3^n taken literally; equals 3 on the empty word.
inline rational kamae_measure_raw(const std::string& w) {
  return norm1(word_product(kamae_family(), w)) / rpow(rational(3), w.size());
}

// Additivity-consistent probability: ||A(w)|| / 3^(n+1).
inline rational kamae_measure(const std::string& w) { return kamae_measure_raw(w) / rational(3); }

// A(0)/3, A(1)/3 with R = U/3 and L = U, so that mu(w) = ||A(w)|| / 3^(n+1).
inline LinearRepresentation kamae_representation() {
  const Family& a = kamae_family();
  rational third(1, 3);
  return LinearRepresentation({a[0] * third, a[1] * third}, ExactMatrix::ones(3) * third, ExactMatrix::ones(3));
}

// B_a = A(0) A(1)^a A(0).
inline ExactMatrix kamae_B(unsigned long a) {
  long x = static_cast<long>(a);
  return exact_from_ints({{x + 1, x, 0}, {x, x + 1, 0}, {2 * x + 1, 2 * x + 1, 0}});
}

// alpha with B_{a_1} ... B_{a_n} = B_alpha.
inline unsigned long kamae_alpha(const std::vector<unsigned long>& as) {
  unsigned long p = 1;
  for (auto a : as) p *= 2 * a + 1;
  return (p - 1) / 2;
}

inline rational kamae_theta(unsigned long a) { return rational(1 + 2 * static_cast<long>(a), 4 * (1 + static_cast<long>(a))); }

class NeedsMoreDigits : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Limit vector for y in [1^a0 0]: the prefix must contain a 0.
inline ExactMatrix kamae_V(const std::string& prefix) {
  std::size_t a0 = 0;
  while (a0 < prefix.size() && prefix[a0] == '1') ++a0;
  if (a0 == prefix.size()) throw NeedsMoreDigits("prefix consists of 1s only");
  long a = static_cast<long>(a0);
  ExactMatrix m = exact_from_ints({{1, 0, a}, {0, 1, a}, {0, 0, 1}});
  ExactMatrix v = ExactMatrix::column({rational(1, 4), rational(1, 4), rational(1, 2)});
  return product(m, v) / rational(a + 1);
}

inline ExactMatrix kamae_V_tail0(const std::string& w) {
  const Family& a = kamae_family();
  return normalized(product(product(word_product(a, w), a[0]), ExactMatrix::ones(3)));
}

inline ExactMatrix kamae_V_tail1(const std::string& w) {
  ExactMatrix u12 = ExactMatrix::column({1, 1, 0});
  return normalized(product(word_product(kamae_family(), w), u12));
}

enum class KamaeCase { ZERO_ZERO, ZERO_ONES_ZERO, ONES_ZERO, ZERO_ONE_BAR, ONE_BAR };

inline const char* to_string(KamaeCase c) {
  switch (c) {
    case KamaeCase::ZERO_ZERO:
      return "[00]";
    case KamaeCase::ZERO_ONES_ZERO:
      return "[01^a0]";
    case KamaeCase::ONES_ZERO:
      return "[1^a0]";
    case KamaeCase::ZERO_ONE_BAR:
      return "01bar";
    default:
      return "1bar";
  }
}

struct KamaeClass {
  KamaeCase kind;
  unsigned long a = 0;
};

// Classifies a prefix; runs of 1 reaching the end of the prefix cannot be
// told apart from the points 1bar and 01bar.
inline KamaeClass kamae_classify(const std::string& y) {
  if (y.empty()) throw NeedsMoreDigits("empty prefix");
  if (y[0] == '0') {
    if (y.size() < 2) throw NeedsMoreDigits("one digit after 0 is needed");
    if (y[1] == '0') return {KamaeCase::ZERO_ZERO, 0};
    std::size_t k = 1;
    while (k < y.size() && y[k] == '1') ++k;
    if (k == y.size()) throw NeedsMoreDigits("run of 1s reaches the end of the prefix");
    return {KamaeCase::ZERO_ONES_ZERO, k - 1};
  }
  std::size_t k = 0;
  while (k < y.size() && y[k] == '1') ++k;
  if (k == y.size()) throw NeedsMoreDigits("run of 1s reaches the end of the prefix");
  return {KamaeCase::ONES_ZERO, k};
}

inline double kamae_phi_of(const KamaeClass& c) {
  double a = static_cast<double>(c.a);
  switch (c.kind) {
    case KamaeCase::ZERO_ZERO:
    case KamaeCase::ONE_BAR:
      return std::log(1.0 / 3);
    case KamaeCase::ZERO_ONES_ZERO:
      return std::log(1.0 / 3) + std::log((2 * a + 1) / (a + 1));
    case KamaeCase::ONES_ZERO:
      return std::log(1.0 / 3) + std::log((a + 1) / a);
    default:
      return std::log(2.0 / 3);
  }
}

inline double kamae_phi(const std::string& y) { return kamae_phi_of(kamae_classify(y)); }

// The two majorants for ||Pi_{n+r} - Pi_n|| around y = 1bar.
struct KamaeMajorants {
  rational all_ones;
  rational mixed;
};

inline KamaeMajorants kamae_cauchy_majorants(unsigned long n) {
  long m = static_cast<long>(n);
  rational f(2 * m + 2, 2 * m + 3);
  ExactMatrix p = ExactMatrix::column({f / 2, f / 2, f / rational(2 * m + 2)});
  ExactMatrix half = ExactMatrix::column({rational(1, 2), rational(1, 2), 0});
  rational base = norm1(p - half);
  rational t = kamae_theta(n);
  ExactMatrix th = ExactMatrix::column({t, t, 1 - 2 * t});
  return {2 * base, norm1(th - half) + base};
}

}  // namespace mpl

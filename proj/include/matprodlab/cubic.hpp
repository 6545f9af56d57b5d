#pragma once

#include "rational.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace mpl {

// Enclosure [lo, hi] of the real root of x^3 - 2x^2 + x - 1 of width <= 2^-bits.
inline std::pair<rational, rational> beta_bracket(unsigned bits) {
  rational lo(7, 4), hi(9, 5);
  auto f = [](const rational& x) -> rational { return x * x * x - 2 * x * x + x - 1; };
  rational width = rpow(rational(1, 2), bits);
  while (hi - lo > width) {
    rational mid = (lo + hi) / 2;
    if (sgn(f(mid)) <= 0) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

inline const std::pair<rational, rational>& cached_beta_bracket(unsigned bits) {
  static std::mutex mu;
  static std::map<unsigned, std::pair<rational, rational>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bits);
  if (it == cache.end()) it = cache.emplace(bits, beta_bracket(bits)).first;
  return it->second;
}

// a + b*beta + c*beta^2 with beta^3 = 2 beta^2 - beta + 1.
class CubicFieldElement {
 public:
  CubicFieldElement() : c_{0, 0, 0} {}
  CubicFieldElement(rational a) : c_{std::move(a), 0, 0} {}  // NOLINT(google-explicit-constructor)
  CubicFieldElement(long a) : c_{rational(a), 0, 0} {}       // NOLINT(google-explicit-constructor)
  CubicFieldElement(rational a, rational b, rational c) : c_{std::move(a), std::move(b), std::move(c)} {}

  static CubicFieldElement beta() { return {0, 1, 0}; }

  const rational& coeff(std::size_t k) const { return c_.at(k); }
  bool is_zero() const { return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0; }

  friend CubicFieldElement operator+(const CubicFieldElement& x, const CubicFieldElement& y) {
    return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]};
  }
  friend CubicFieldElement operator-(const CubicFieldElement& x, const CubicFieldElement& y) {
    return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]};
  }
  friend CubicFieldElement operator-(const CubicFieldElement& x) { return CubicFieldElement() - x; }
  friend CubicFieldElement operator*(const CubicFieldElement& x, const CubicFieldElement& y) {
    // Coefficients of the degree-4 product, then reduction of beta^3 and beta^4.
    std::array<rational, 5> p;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) p[i + j] += x.c_[i] * y.c_[j];
    // beta^3 = 1 - beta + 2 beta^2 and beta^4 = 2 - beta + 3 beta^2.
    CubicFieldElement r(p[0] + p[3] + 2 * p[4], p[1] - p[3] - p[4], p[2] + 2 * p[3] + 3 * p[4]);
    return r;
  }
  friend bool operator==(const CubicFieldElement& x, const CubicFieldElement& y) { return x.c_ == y.c_; }

  CubicFieldElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in the cubic field");
    // Solve x * (p + q beta + r beta^2) = 1 through the multiplication matrix.
    CubicFieldElement e0 = *this * CubicFieldElement(1), e1 = *this * beta(), e2 = *this * (beta() * beta());
    rational m[3][4] = {{e0.c_[0], e1.c_[0], e2.c_[0], 1}, {e0.c_[1], e1.c_[1], e2.c_[1], 0}, {e0.c_[2], e1.c_[2], e2.c_[2], 0}};
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      while (sgn(m[piv][col]) == 0) ++piv;
      for (int k = 0; k < 4; ++k) std::swap(m[col][k], m[piv][k]);
      for (int r = 0; r < 3; ++r) {
        if (r == col || sgn(m[r][col]) == 0) continue;
        rational f = m[r][col] / m[col][col];
        for (int k = 0; k < 4; ++k) m[r][k] -= f * m[col][k];
      }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
  }
  friend CubicFieldElement operator/(const CubicFieldElement& x, const CubicFieldElement& y) { return x * y.inverse(); }

  // Rational interval enclosing the value for a given beta bracket.
  std::pair<rational, rational> enclose(const std::pair<rational, rational>& b) const {
    const auto& [lo, hi] = b;
    // beta > 0, so each monomial is monotone on the bracket.
    auto term = [](const rational& coef, const rational& x0, const rational& x1) {
      rational u = coef * x0, v = coef * x1;
      return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
    };
    auto t1 = term(c_[1], lo, hi);
    auto t2 = term(c_[2], lo * lo, hi * hi);
    return {c_[0] + t1.first + t2.first, c_[0] + t1.second + t2.second};
  }

  // Exact sign: 1, beta and beta^2 are independent over Q, so a nonzero
  // element has a nonzero value and refinement terminates.
  int sign() const {
    if (is_zero()) return 0;
    for (unsigned bits = 64;; bits *= 2) {
      auto iv = enclose(cached_beta_bracket(bits));
      if (sgn(iv.first) > 0) return 1;
      if (sgn(iv.second) < 0) return -1;
      if (bits > (1u << 20)) throw std::runtime_error("cubic sign refinement did not terminate");
    }
  }

  double to_double() const {
    auto iv = enclose(cached_beta_bracket(80));
    return rational((iv.first + iv.second) / 2).get_d();
  }

  // Decimal string with the requested number of digits after the point.
  std::string decimal(unsigned digits) const {
    auto iv = enclose(beta_bracket(4 * digits + 16));
    rational mid = (iv.first + iv.second) / 2;
    bool neg = sgn(mid) < 0;
    if (neg) mid = -mid;
    mpz_class scale = 1;
    for (unsigned k = 0; k < digits; ++k) scale *= 10;
    mpz_class scaled = mid.get_num() * scale / mid.get_den();
    std::string s = scaled.get_str();
    if (s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
  }

  std::string str() const { return "(" + to_string(c_[0]) + ")+(" + to_string(c_[1]) + ")b+(" + to_string(c_[2]) + ")b^2"; }

 private:
  std::array<rational, 3> c_;
};

inline bool operator<(const CubicFieldElement& x, const CubicFieldElement& y) { return (y - x).sign() > 0; }
inline bool operator<=(const CubicFieldElement& x, const CubicFieldElement& y) { return (y - x).sign() >= 0; }

inline CubicFieldElement cubic_pow(const CubicFieldElement& x, unsigned n) {
  CubicFieldElement r(1);
  for (unsigned k = 0; k < n; ++k) r = r * x;
  return r;
}

}  // namespace mpl

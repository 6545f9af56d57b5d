#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpl {

using rational = mpq_class;

inline rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const rational& q) { return q.get_str(); }

inline rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline double to_double(const rational& q) { return q.get_d(); }

// Natural logarithm of a positive rational, accurate for very large or very
// small magnitudes where get_d() would overflow.
inline double log_of(const rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("log of a nonpositive rational");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0);
}

inline rational rpow(const rational& base, unsigned long e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  rational r(n, d);
  r.canonicalize();
  return r;
}

inline rational rmax(const rational& a, const rational& b) { return a < b ? b : a; }
inline rational rmin(const rational& a, const rational& b) { return b < a ? b : a; }

}  // namespace mpl

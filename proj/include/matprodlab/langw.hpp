#pragma once

#include "betaconv.hpp"
#include "condc.hpp"
#include "family.hpp"
#include "hclass.hpp"
#include "matrix.hpp"
#include "parallel.hpp"
#include "printed_tables.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpl {

// ---------------------------------------------------------------------------
// The language W

struct WFamily {
  std::string_view tag;
  std::string_view stem;
  char tail;  // 0 for the single word "1"
  int Lambda_bound;
};

inline constexpr std::array<WFamily, 13> w_families{{
    {"1", "1", 0, 2},
    {"010^k", "01", '0', 8},
    {"110^k", "11", '0', 8},
    {"210^k", "21", '0', 6},
    {"20^k", "2", '0', 7},
    {"002^k", "00", '2', 12},
    {"00102^k", "0010", '2', 13},
    {"10102^k", "1010", '2', 7},
    {"20102^k", "2010", '2', 6},
    {"1102^k", "110", '2', 8},
    {"2102^k", "210", '2', 6},
    {"202^k", "20", '2', 5},
    {"12^k", "1", '2', 9},
}};

inline constexpr int w_global_Lambda = 13;
inline constexpr int w_global_lambda = 5;

struct WWord {
  std::size_t family = 0;
  std::size_t k = 0;  // 0 for the word "1"

  std::string render() const {
    const auto& f = w_families.at(family);
    std::string s(f.stem);
    if (f.tail) s.append(k, f.tail);
    return s;
  }
  std::string tag() const {
    if (family == 0) return "1";
    std::string t(w_families[family].tag);
    return t.substr(0, t.size() - 1) + std::to_string(k);
  }
  friend bool operator==(const WWord&, const WWord&) = default;
};

inline WWord make_wword(std::size_t family, std::size_t k) {
  if (family >= w_families.size()) throw std::out_of_range("unknown W family");
  if (family == 0) return {0, 0};
  if (k < 1) throw std::invalid_argument("W family parameter k must be >= 1");
  return {family, k};
}

inline std::vector<WWord> w_enumerate(std::size_t kmax) {
  if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  std::vector<WWord> out{{0, 0}};
  for (std::size_t f = 1; f < w_families.size(); ++f)
    for (std::size_t k = 1; k <= kmax; ++k) out.push_back({f, k});
  return out;
}

inline std::optional<WWord> parse_wword(std::string_view w) {
  if (w == "1") return WWord{0, 0};
  for (std::size_t f = 1; f < w_families.size(); ++f) {
    const auto& fam = w_families[f];
    if (w.size() <= fam.stem.size() || w.substr(0, fam.stem.size()) != fam.stem) continue;
    auto rest = w.substr(fam.stem.size());
    if (std::all_of(rest.begin(), rest.end(), [&](char c) { return c == fam.tail; })) return WWord{f, rest.size()};
  }
  return std::nullopt;
}

inline std::string concat(const std::vector<WWord>& ws) {
  std::string s;
  for (const auto& w : ws) s += w.render();
  return s;
}

// The W-word that is a suffix of w, if any. At most one exists: the digit
// preceding the final run of 0s or 2s determines the family.
inline std::optional<WWord> w_suffix(std::string_view w) {
  if (w.empty()) return std::nullopt;
  char last = w.back();
  if (last == '1') return WWord{0, 0};
  std::size_t run = 0;
  while (run < w.size() && w[w.size() - 1 - run] == last) ++run;
  std::string_view before = w.substr(0, w.size() - run);
  for (std::size_t f = 1; f < w_families.size(); ++f) {
    const auto& fam = w_families[f];
    if (fam.tail != last) continue;
    if (before.size() >= fam.stem.size() && before.substr(before.size() - fam.stem.size()) == fam.stem)
      return WWord{f, run};
  }
  return std::nullopt;
}

enum class HeadKind { EMPTY, ONE_ZEROS, ZEROS, ZERO_ONE_ZERO_TWOS, ONE_ZERO_TWOS, ZERO_TWOS, TWOS };

inline std::string to_string(HeadKind h) {
  switch (h) {
    case HeadKind::EMPTY: return "empty";
    case HeadKind::ONE_ZEROS: return "10^k";
    case HeadKind::ZEROS: return "0^k";
    case HeadKind::ZERO_ONE_ZERO_TWOS: return "0102^k";
    case HeadKind::ONE_ZERO_TWOS: return "102^k";
    case HeadKind::ZERO_TWOS: return "02^k";
    case HeadKind::TWOS: return "2^k";
  }
  return "?";
}

inline std::optional<HeadKind> classify_head(std::string_view h) {
  if (h.empty()) return HeadKind::EMPTY;
  auto all = [](std::string_view s, char c) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [&](char x) { return x == c; });
  };
  if (all(h, '0')) return HeadKind::ZEROS;
  if (all(h, '2')) return HeadKind::TWOS;
  if (h[0] == '1' && all(h.substr(1), '0')) return HeadKind::ONE_ZEROS;
  if (h.size() >= 2 && h.substr(0, 2) == "02" && all(h.substr(1), '2')) return HeadKind::ZERO_TWOS;
  if (h.size() >= 3 && h.substr(0, 2) == "10" && all(h.substr(2), '2')) return HeadKind::ONE_ZERO_TWOS;
  if (h.size() >= 4 && h.substr(0, 3) == "010" && all(h.substr(3), '2')) return HeadKind::ZERO_ONE_ZERO_TWOS;
  return std::nullopt;
}

struct WDecomposition {
  std::string head;
  std::vector<WWord> body;
  HeadKind head_kind = HeadKind::EMPTY;
  bool strict_suffix_only() const { return body.empty(); }
  std::string render() const { return head + concat(body); }
};

// Right-to-left greedy decomposition w = W_0 W_1 ... W_q with W_i in W and
// W_0 a (possibly empty) strict suffix of a W-word.
inline WDecomposition w_decompose(std::string_view w) {
  for (char c : w)
    if (c < '0' || c > '2') throw std::invalid_argument("w_decompose expects a ternary word");
  WDecomposition d;
  std::size_t end = w.size();
  while (end > 0) {
    auto s = w_suffix(w.substr(0, end));
    if (!s) break;
    d.body.push_back(*s);
    end -= s->render().size();
  }
  std::reverse(d.body.begin(), d.body.end());
  d.head = std::string(w.substr(0, end));
  auto kind = classify_head(d.head);
  if (!kind) throw std::logic_error("w_decompose: head " + d.head + " is not a strict suffix of a W-word");
  d.head_kind = *kind;
  return d;
}

// ---------------------------------------------------------------------------
// Integer arithmetic on the 0/1 generators

inline constexpr std::size_t kDim = 7;
using IntVec = std::array<int, kDim>;
using Mask = std::uint8_t;  // bit i <-> coordinate i (0-based)

inline const std::array<std::array<std::array<int, kDim>, kDim>, 3>& int_generators() {
  static const auto gens = [] {
    std::array<std::array<std::array<int, kDim>, kDim>, 3> g{};
    const auto& fam = beta_generators();
    for (std::size_t d = 0; d < 3; ++d)
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) g[d][i][j] = fam[d](i, j).get_num().get_si();
    return g;
  }();
  return gens;
}

inline IntVec apply_digit(std::size_t d, const IntVec& v) {
  const auto& a = int_generators()[d];
  IntVec y{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) y[i] += a[i][j] * v[j];
  return y;
}

inline Mask mask_of(const IntVec& v) {
  Mask m = 0;
  for (std::size_t i = 0; i < kDim; ++i)
    if (v[i] != 0) m |= static_cast<Mask>(1u << i);
  return m;
}

inline IntVec indicator(Mask m, int value = 1) {
  IntVec v{};
  for (std::size_t i = 0; i < kDim; ++i)
    if (m & (1u << i)) v[i] = value;
  return v;
}

inline Mask mask_from_string(std::string_view bits) {
  Mask m = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') m |= static_cast<Mask>(1u << i);
  return m;
}

inline std::string mask_string(Mask m) {
  std::string s;
  for (std::size_t i = 0; i < kDim; ++i) s.push_back(m & (1u << i) ? '1' : '0');
  return s;
}

inline SupportPattern mask_pattern(Mask m) { return SupportPattern::from_string(mask_string(m)); }

// Support of A(d) applied to any vector with support m.
inline Mask image_mask(std::size_t d, Mask m) { return mask_of(apply_digit(d, indicator(m))); }

// Support of (row vector with support m) times A(d).
inline Mask row_image_mask(std::size_t d, Mask m) {
  const auto& a = int_generators()[d];
  Mask out = 0;
  for (std::size_t l = 0; l < kDim; ++l) {
    if (!(m & (1u << l))) continue;
    for (std::size_t j = 0; j < kDim; ++j)
      if (a[l][j]) out |= static_cast<Mask>(1u << j);
  }
  return out;
}

inline std::string tuple_string(const IntVec& v, int star = -1) {
  std::string s = "(";
  for (std::size_t i = 0; i < kDim; ++i) {
    if (i) s += ",";
    s += (star >= 0 && v[i] >= star) ? std::string("*") : std::to_string(v[i]);
  }
  return s + ")";
}

// Exact nonnegative integer 7x7 matrix, multiplied by generators via column
// or row additions only.
class BigIntMatrix {
 public:
  BigIntMatrix() {
    for (auto& x : a_) x = 0;
  }
  static BigIntMatrix identity() {
    BigIntMatrix m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = 1;
    return m;
  }
  static BigIntMatrix of_word(std::string_view w) {
    BigIntMatrix m = identity();
    for (char c : w) m.mul_right(digit_of(c, 3));
    return m;
  }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * kDim + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * kDim + j]; }

  void mul_right(std::size_t d) {
    const auto& g = int_generators()[d];
    std::array<mpz_class, kDim * kDim> out;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        mpz_class s = 0;
        for (std::size_t l = 0; l < kDim; ++l)
          if (g[l][j]) s += a_[i * kDim + l];
        out[i * kDim + j] = std::move(s);
      }
    a_.swap(out);
  }
  void mul_left(std::size_t d) {
    const auto& g = int_generators()[d];
    std::array<mpz_class, kDim * kDim> out;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        mpz_class s = 0;
        for (std::size_t l = 0; l < kDim; ++l)
          if (g[i][l]) s += a_[l * kDim + j];
        out[i * kDim + j] = std::move(s);
      }
    a_.swap(out);
  }
  ExactMatrix to_exact() const {
    ExactMatrix m(kDim, kDim);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) m(i, j) = rational(a_[i * kDim + j]);
    return m;
  }
  Mask column_mask(std::size_t j) const {
    Mask m = 0;
    for (std::size_t i = 0; i < kDim; ++i)
      if (sgn(a_[i * kDim + j]) != 0) m |= static_cast<Mask>(1u << i);
    return m;
  }

 private:
  std::array<mpz_class, kDim * kDim> a_;
};

// ---------------------------------------------------------------------------
// T_2 and the key-lemma properties

inline const std::array<Mask, 4>& t2_masks() {
  static const std::array<Mask, 4> t{mask_from_string("1011100"), mask_from_string("1110110"),
                                     mask_from_string("1110111"), mask_from_string("1111100")};
  return t;
}

inline bool in_t2(Mask m) {
  for (auto t : t2_masks())
    if (t == m) return true;
  return false;
}

inline std::vector<SupportPattern> t2_set() {
  std::vector<SupportPattern> out;
  for (auto t : t2_masks()) out.push_back(mask_pattern(t));
  return out;
}

inline bool in_two_t2(const IntVec& v) {
  Mask m = mask_of(v);
  if (!in_t2(m)) return false;
  for (std::size_t i = 0; i < kDim; ++i)
    if (v[i] != 0 && v[i] != 2) return false;
  return true;
}

struct KeyLemmaCheck {
  bool part_i = false;
  bool part_ii = false;
  bool part_iii = false;
  std::size_t col_patterns = 0;
  bool ok() const { return part_i && part_ii && part_iii; }
};

// (i) one of the columns 1, 3, 5 has support in T_2; (ii) #Col <= 2; (iii) H1.
inline KeyLemmaCheck key_lemma_properties(const std::array<Mask, kDim>& cols) {
  KeyLemmaCheck c;
  for (std::size_t j : {0u, 2u, 4u})
    if (in_t2(cols[j])) c.part_i = true;
  std::set<Mask> distinct;
  for (auto m : cols)
    if (m) distinct.insert(m);
  c.col_patterns = distinct.size();
  c.part_ii = distinct.size() <= 2;
  c.part_iii = true;
  for (auto p : cols)
    for (auto q : cols)
      if ((p & q) != p && (p & q) != q) c.part_iii = false;
  return c;
}

inline std::array<Mask, kDim> column_masks(const BigIntMatrix& m) {
  std::array<Mask, kDim> cols{};
  for (std::size_t j = 0; j < kDim; ++j) cols[j] = m.column_mask(j);
  return cols;
}

inline KeyLemmaCheck key_lemma_properties(const BigIntMatrix& m) { return key_lemma_properties(column_masks(m)); }

// ---------------------------------------------------------------------------
// Per-family bounds with an affine-in-k certificate

struct FamilyBoundRow {
  std::size_t family = 0;
  std::size_t kmax = 0;
  rational max_Lambda{0};
  rational max_lambda{0};
  std::size_t worst_Lambda_k = 0;
  bool Lambda_ok = true;
  bool lambda_ok = true;
  bool affine = false;     // entries periodic-affine in k on [k0, kmax]
  std::size_t k0 = 0;
  std::size_t period = 0;
  bool certified = false;  // bounds proven for every k >= 1 from the affine form
  rational sup_Lambda{0};  // exact sup over k >= 1 when the form is found
  rational sup_lambda{0};
  std::string witness;
};

struct FamilyBoundsReport {
  std::vector<FamilyBoundRow> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.Lambda_ok || !r.lambda_ok) return false;
    return true;
  }
  bool all_certified() const {
    for (const auto& r : rows)
      if (!r.certified) return false;
    return true;
  }
};

namespace detail {

// sup over integers t >= 0 of (a + b t) / (c + d t) with c > 0 and b, d >= 0.
// A linear-fractional map is monotone, so the sup is at t = 0 or at infinity;
// returns -1 when unbounded.
inline rational mobius_sup(const rational& a, const rational& b, const rational& c, const rational& d) {
  rational at0 = a / c;
  if (sgn(d) == 0) return sgn(b) > 0 ? rational(-1) : at0;
  return rmax(at0, b / d);
}

struct PeriodicAffine {
  std::size_t k0 = 0;
  std::size_t period = 0;
};

// Finds k0 and p such that along every class k = k0 + r + p t the entries
// are affine in t with nonnegative slopes and constant support on [k0, kmax].
inline std::optional<PeriodicAffine> find_periodic_affine(const std::vector<ExactMatrix>& mats) {
  std::size_t kmax = mats.size();
  for (std::size_t k0 = 1; k0 <= 4; ++k0)
    for (std::size_t p = 1; p <= 6; ++p) {
      if (k0 + 3 * p > kmax) continue;
      bool good = true;
      for (std::size_t r = 0; r < p && good; ++r) {
        const ExactMatrix& m0 = mats[k0 + r - 1];
        const ExactMatrix& m1 = mats[k0 + r + p - 1];
        for (std::size_t k = k0 + r; k <= kmax && good; k += p) {
          rational t(static_cast<long>((k - k0 - r) / p));
          const ExactMatrix& m = mats[k - 1];
          for (std::size_t i = 0; i < kDim && good; ++i)
            for (std::size_t j = 0; j < kDim && good; ++j) {
              rational slope = m1(i, j) - m0(i, j);
              if (sgn(slope) < 0 || m0(i, j) + slope * t != m(i, j)) good = false;
              if (is_zero(m0(i, j)) && sgn(slope) != 0) good = false;
            }
        }
      }
      if (good) return PeriodicAffine{k0, p};
    }
  return std::nullopt;
}

// Exact sup of min_Lambda and min_lambda over all k >= k0 on a periodic-affine family.
inline std::optional<std::pair<rational, rational>> periodic_affine_sup(const std::vector<ExactMatrix>& mats,
                                                                        const PeriodicAffine& pa) {
  rational supL(1), supl(0);
  for (std::size_t r = 0; r < pa.period; ++r) {
    const ExactMatrix& base = mats[pa.k0 + r - 1];
    const ExactMatrix& next = mats[pa.k0 + r + pa.period - 1];
    ExactMatrix slope = next - base;
    std::vector<rational> nb(kDim), ns(kDim);
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t i = 0; i < kDim; ++i) {
        nb[j] += base(i, j);
        ns[j] += slope(i, j);
      }
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        if (is_zero(base(i, j))) continue;
        rational s = mobius_sup(nb[j], ns[j], base(i, j), slope(i, j));
        if (sgn(s) < 0) return std::nullopt;
        supL = rmax(supL, s);
        for (std::size_t j1 = 0; j1 < kDim; ++j1) {
          if (!is_zero(base(i, j1))) continue;
          rational t = mobius_sup(nb[j1], ns[j1], base(i, j), slope(i, j));
          if (sgn(t) < 0) return std::nullopt;
          supl = rmax(supl, t);
        }
      }
  }
  return std::make_pair(supL, supl);
}

}  // namespace detail

inline FamilyBoundsReport verify_family_bounds(std::size_t kmax) {
  if (kmax < 3) throw std::invalid_argument("verify_family_bounds needs kmax >= 3");
  FamilyBoundsReport rep;
  for (std::size_t f = 0; f < w_families.size(); ++f) {
    const auto& fam = w_families[f];
    FamilyBoundRow row;
    row.family = f;
    rational bound(fam.Lambda_bound);
    std::vector<ExactMatrix> mats;
    if (f == 0) {
      mats.push_back(word_product(beta_generators(), "1"));
    } else {
      row.kmax = kmax;
      BigIntMatrix m = BigIntMatrix::of_word(fam.stem);
      for (std::size_t k = 1; k <= kmax; ++k) {
        m.mul_right(digit_of(fam.tail, 3));
        mats.push_back(m.to_exact());
      }
    }
    for (std::size_t k = 1; k <= mats.size(); ++k) {
      const ExactMatrix& a = mats[k - 1];
      rational L = min_Lambda(a), l = min_lambda(a);
      if (L > row.max_Lambda) {
        row.max_Lambda = L;
        row.worst_Lambda_k = k;
      }
      row.max_lambda = rmax(row.max_lambda, l);
      if ((L > bound || L > w_global_Lambda) && row.Lambda_ok) {
        row.Lambda_ok = false;
        row.witness = WWord{f, f ? k : 0}.render() + ": min_Lambda = " + to_string(L);
      }
      if (l > w_global_lambda && row.lambda_ok) {
        row.lambda_ok = false;
        row.witness = WWord{f, f ? k : 0}.render() + ": min_lambda = " + to_string(l);
      }
    }
    if (f == 0) {
      row.certified = row.Lambda_ok && row.lambda_ok;
      row.sup_Lambda = row.max_Lambda;
      row.sup_lambda = row.max_lambda;
      rep.rows.push_back(row);
      continue;
    }
    auto pa = detail::find_periodic_affine(mats);
    row.affine = pa.has_value();
    if (pa) {
      row.k0 = pa->k0;
      row.period = pa->period;
      if (auto sup = detail::periodic_affine_sup(mats, *pa)) {
        row.sup_Lambda = sup->first;
        row.sup_lambda = sup->second;
        for (std::size_t k = 1; k < pa->k0; ++k) {
          row.sup_Lambda = rmax(row.sup_Lambda, min_Lambda(mats[k - 1]));
          row.sup_lambda = rmax(row.sup_lambda, min_lambda(mats[k - 1]));
        }
        row.certified = row.sup_Lambda <= bound && row.sup_lambda <= w_global_lambda;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Golden product tables and the key lemma

inline const std::vector<std::string>& l_prime() {
  static const std::vector<std::string> v{"00", "10", "20", "1", "2"};
  return v;
}
inline const std::vector<std::string>& l_second() {
  static const std::vector<std::string> v{"00", "01", "02", "10", "110", "111", "112", "12", "20", "21", "22"};
  return v;
}
inline const std::vector<std::string>& l_third() {
  static const std::vector<std::string> v{"0", "10", "110", "111", "112", "12", "20", "21", "22"};
  return v;
}
inline const std::vector<std::string>& third_case_words() {
  static const std::vector<std::string> v{"2020", "20020", "00020", "220"};
  return v;
}

// All words of L'01L'', L'21L''' and the third-case list, with 11111.
inline std::vector<std::string> key_lemma_factor_words() {
  std::vector<std::string> out;
  for (const auto& a : l_prime())
    for (const auto& b : l_second()) out.push_back(a + "01" + b);
  for (const auto& a : l_prime())
    for (const auto& b : l_third()) out.push_back(a + "21" + b);
  for (const auto& w : third_case_words()) out.push_back(w);
  out.push_back("11111");
  return out;
}

struct GoldenEntry {
  std::string word;
  bool matches = false;
  KeyLemmaCheck props;
  std::string mismatch;
};

struct GoldenReport {
  std::vector<GoldenEntry> printed;
  std::vector<GoldenEntry> generated;  // every factor word of the key lemma
  bool ok() const {
    for (const auto& e : printed)
      if (!e.matches || !e.props.ok()) return false;
    for (const auto& e : generated)
      if (!e.props.ok()) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> f;
    for (const auto& e : printed) {
      if (!e.matches) f.push_back(e.word + ": " + e.mismatch);
      else if (!e.props.ok()) f.push_back(e.word + ": key properties fail");
    }
    for (const auto& e : generated)
      if (!e.props.ok()) f.push_back(e.word + ": key properties fail");
    return f;
  }
};

inline GoldenReport verify_golden_products(const std::vector<PrintedProduct>& table) {
  GoldenReport rep;
  for (const auto& p : table) {
    GoldenEntry e;
    e.word = std::string(p.word);
    BigIntMatrix m = BigIntMatrix::of_word(p.word);
    e.matches = true;
    for (std::size_t i = 0; i < kDim && e.matches; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        if (m(i, j) != p.entries[i][j]) {
          e.matches = false;
          e.mismatch = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") computed " +
                       m(i, j).get_str() + " printed " + std::to_string(p.entries[i][j]);
          break;
        }
    e.props = key_lemma_properties(m);
    rep.printed.push_back(e);
  }
  for (const auto& w : key_lemma_factor_words()) {
    GoldenEntry e;
    e.word = w;
    e.matches = true;
    e.props = key_lemma_properties(BigIntMatrix::of_word(w));
    rep.generated.push_back(e);
  }
  return rep;
}

inline GoldenReport verify_golden_products() {
  return verify_golden_products(std::vector<PrintedProduct>(printed_products.begin(), printed_products.end()));
}

inline std::size_t default_concat_words = 13;

struct KeyLemmaResult {
  bool precondition = false;
  std::size_t body_words = 0;
  KeyLemmaCheck props;
};

// Precondition: the right-greedy decomposition has at least `min_words` body words.
inline KeyLemmaResult verify_key_lemma(std::string_view word, std::size_t min_words = default_concat_words) {
  KeyLemmaResult r;
  auto d = w_decompose(word);
  r.body_words = d.body.size();
  r.precondition = r.body_words >= min_words;
  if (!r.precondition) throw std::invalid_argument("verify_key_lemma: word is not a concatenation of enough W-words");
  r.props = key_lemma_properties(BigIntMatrix::of_word(word));
  return r;
}

inline std::uint64_t seeded_index(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline std::vector<WWord> random_wwords(std::mt19937_64& rng, std::size_t count, std::size_t kmax) {
  std::vector<WWord> ws;
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t f = seeded_index(rng, w_families.size());
    std::size_t k = f == 0 ? 0 : 1 + seeded_index(rng, kmax);
    ws.push_back({f, k});
  }
  return ws;
}

struct KeyLemmaSweep {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<std::string> witness;
  bool ok() const { return failures == 0; }
};

inline KeyLemmaSweep key_lemma_sweep(std::size_t samples, std::size_t kmax, std::uint64_t seed,
                                     std::size_t words = default_concat_words) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> inputs;
  for (std::size_t s = 0; s < samples; ++s) inputs.push_back(concat(random_wwords(rng, words, kmax)));
  KeyLemmaSweep rep;
  rep.samples = samples;
  std::mutex mu;
  parallel_for(inputs.size(), [&](std::size_t s) {
    auto c = key_lemma_properties(BigIntMatrix::of_word(inputs[s]));
    if (!c.ok()) {
      std::lock_guard<std::mutex> lock(mu);
      ++rep.failures;
      if (!rep.witness || inputs[s] < *rep.witness) rep.witness = inputs[s];
    }
  });
  return rep;
}

// Column-support tuples of A(w) over all words: closure from the identity
// under right multiplication.
inline std::vector<std::array<Mask, kDim>> reachable_column_tuples() {
  using Tuple = std::array<Mask, kDim>;
  auto right = [](const Tuple& t, std::size_t d) {
    const auto& g = int_generators()[d];
    Tuple out{};
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t l = 0; l < kDim; ++l)
        if (g[l][j]) out[j] |= t[l];
    return out;
  };
  Tuple id{};
  for (std::size_t j = 0; j < kDim; ++j) id[j] = static_cast<Mask>(1u << j);
  std::set<Tuple> seen{id};
  std::vector<Tuple> order{id};
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t d = 0; d < 3; ++d) {
      Tuple n = right(order[q], d);
      if (seen.insert(n).second) order.push_back(n);
    }
  return order;
}

struct PropagationReport {
  std::size_t tuples = 0;
  std::size_t qualifying = 0;
  std::size_t left_failures = 0;
  std::size_t right_failures = 0;
  std::optional<std::string> witness;
  bool ok() const { return left_failures == 0 && right_failures == 0; }
};

// For every reachable column-support tuple satisfying (i)-(iii), checks that
// one-step extensions on either side still satisfy (i).
inline PropagationReport key_lemma_propagation() {
  PropagationReport rep;
  auto tuples = reachable_column_tuples();
  rep.tuples = tuples.size();
  for (const auto& t : tuples) {
    if (!key_lemma_properties(t).ok()) continue;
    ++rep.qualifying;
    for (std::size_t d = 0; d < 3; ++d) {
      std::array<Mask, kDim> left{}, right{};
      for (std::size_t j = 0; j < kDim; ++j) left[j] = image_mask(d, t[j]);
      const auto& g = int_generators()[d];
      for (std::size_t j = 0; j < kDim; ++j)
        for (std::size_t l = 0; l < kDim; ++l)
          if (g[l][j]) right[j] |= t[l];
      auto describe = [&](const char* side) {
        std::string s = std::string(side) + " digit " + std::to_string(d) + " on columns";
        for (auto m : t) s += " " + mask_string(m);
        return s;
      };
      if (!key_lemma_properties(left).part_i) {
        ++rep.left_failures;
        if (!rep.witness) rep.witness = describe("left");
      }
      if (!key_lemma_properties(right).part_i) {
        ++rep.right_failures;
        if (!rep.witness) rep.witness = describe("right");
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Graph Gamma_1

struct Gamma1Vertex {
  Mask support = 0;
  IntVec sup{};  // per-coordinate sup; kStar marks an unbounded coordinate
  bool in_V2 = false;
};

struct Gamma1 {
  static constexpr int kStar = 3;
  std::vector<Gamma1Vertex> vertices;
  std::vector<std::array<int, 3>> edges;  // -1 when the image is zero
  std::vector<std::string> violations;

  int index_of(Mask m) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].support == m) return static_cast<int>(v);
    return -1;
  }
  std::vector<Mask> v2_supports() const {
    std::vector<Mask> out;
    for (const auto& v : vertices)
      if (v.in_V2) out.push_back(v.support);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::string label(std::size_t v) const { return tuple_string(vertices[v].sup, kStar); }
};

// Closure of U_1..U_7 under left multiplication with entries saturated at 3;
// one vertex per support, V2 = classes whose support coordinates are all *.
inline Gamma1 build_gamma1(std::size_t cap = 256) {
  Gamma1 g;
  auto sat = [](IntVec v) {
    for (auto& x : v) x = std::min(x, Gamma1::kStar);
    return v;
  };
  std::set<IntVec> seen;
  std::vector<IntVec> order;
  for (std::size_t j = 0; j < kDim; ++j) {
    IntVec u{};
    u[j] = 1;
    if (seen.insert(u).second) order.push_back(u);
  }
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (std::size_t d = 0; d < 3; ++d) {
      IntVec y = sat(apply_digit(d, order[q]));
      if (mask_of(y) == 0) continue;
      if (seen.insert(y).second) order.push_back(y);
    }
    if (order.size() > 64 * cap) throw std::runtime_error("Gamma_1 closure exceeds its model bound");
  }
  std::map<Mask, IntVec> classes;
  for (const auto& v : order) {
    auto& c = classes[mask_of(v)];
    for (std::size_t i = 0; i < kDim; ++i) c[i] = std::max(c[i], v[i]);
  }
  if (classes.size() > cap) throw std::runtime_error("Gamma_1 has more vertices than allowed");
  for (const auto& [m, sup] : classes) {
    Gamma1Vertex v{m, sup, false};
    bool all_star = true, any_star = false;
    for (std::size_t i = 0; i < kDim; ++i) {
      if (!(m & (1u << i))) continue;
      if (sup[i] >= Gamma1::kStar) any_star = true;
      else all_star = false;
    }
    v.in_V2 = all_star;
    if (any_star && !all_star) g.violations.push_back("mixed class " + tuple_string(sup, Gamma1::kStar));
    g.vertices.push_back(v);
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    std::array<int, 3> e{};
    for (std::size_t d = 0; d < 3; ++d) {
      Mask im = image_mask(d, g.vertices[v].support);
      e[d] = im ? g.index_of(im) : -1;
      if (im && e[d] < 0) g.violations.push_back("edge leaves the vertex set");
    }
    g.edges.push_back(e);
  }
  return g;
}

struct SupportClassReport {
  bool v2_is_t2 = false;         // Delta(V2) = T_2
  bool part_a = true;            // every reachable support below a T_2 element
  bool part_b = true;            // every member of a V1 class is <= (2,...,2)
  bool v1_images_bounded = true;  // A(i)V <= (2,...,2) for the V1 class maxima
  bool part_c = true;            // V2 closed
  bool part_d = true;            // length-3 words synchronize T_2
  bool short_words_sync = true;  // 00, 01, 11, 2 synchronize T_2
  bool part_e = true;            // positive V maps into T_2
  bool no_saturated_v1 = true;
  std::size_t v1_count = 0;
  std::size_t v2_count = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> image_witnesses;
  bool ok() const {
    return v2_is_t2 && part_a && part_b && part_c && part_d && short_words_sync && part_e;
  }
};

inline bool synchronizes(std::string_view w) {
  std::optional<Mask> first;
  for (auto t : t2_masks()) {
    IntVec v = indicator(t);
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = apply_digit(digit_of(*it, 3), v);
    Mask m = mask_of(v);
    if (!first) first = m;
    else if (*first != m) return false;
  }
  return true;
}

// Same check with the word read as a path code in Gamma_1: the first letter
// is applied first.
inline bool synchronizes_path(std::string_view code) {
  std::string w(code.rbegin(), code.rend());
  return synchronizes(w);
}

inline bool synchronization_check() {
  for (const auto& w : all_words(3, 3))
    if (!synchronizes(w)) return false;
  return true;
}

inline SupportClassReport verify_support_classes(const Gamma1& g) {
  SupportClassReport r;
  auto v2 = g.v2_supports();
  std::vector<Mask> t2(t2_masks().begin(), t2_masks().end());
  std::sort(t2.begin(), t2.end());
  r.v2_is_t2 = v2 == t2;
  for (const auto& v : g.vertices) {
    if (v.in_V2) ++r.v2_count;
    else ++r.v1_count;
    bool below = false;
    for (auto t : t2)
      if ((v.support & t) == v.support) below = true;
    if (!below) {
      r.part_a = false;
      r.witnesses.push_back("(a) " + mask_string(v.support));
    }
    if (!v.in_V2) {
      for (auto x : v.sup)
        if (x >= Gamma1::kStar) r.no_saturated_v1 = false;
      for (auto x : v.sup)
        if (x > 2) r.part_b = false;
      for (std::size_t d = 0; d < 3; ++d) {
        IntVec y = apply_digit(d, v.sup);
        for (auto x : y)
          if (x > 2) {
            r.v1_images_bounded = false;
            r.image_witnesses.push_back(tuple_string(v.sup) + " digit " + std::to_string(d));
            break;
          }
      }
    }
  }
  for (auto t : t2)
    for (std::size_t d = 0; d < 3; ++d)
      if (!in_t2(image_mask(d, t))) {
        r.part_c = false;
        r.witnesses.push_back("(c) " + mask_string(t) + " digit " + std::to_string(d));
      }
  for (const auto& w : all_words(3, 3))
    if (!synchronizes(w)) {
      r.part_d = false;
      r.witnesses.push_back("(d) " + w);
    }
  for (std::string w : {"00", "01", "11", "2"})
    if (!synchronizes_path(w)) {
      r.short_words_sync = false;
      r.witnesses.push_back("(d) short word " + w);
    }
  for (std::size_t d = 0; d < 3; ++d)
    if (!in_t2(image_mask(d, 0x7f))) {
      r.part_e = false;
      r.witnesses.push_back("(e) digit " + std::to_string(d));
    }
  return r;
}

// ---------------------------------------------------------------------------
// Graph Gamma_2 and the doubling property

struct Gamma2 {
  std::vector<IntVec> vertices;
  std::vector<std::array<int, 3>> edges;  // -1 when A(i)V = 0
  std::vector<bool> red;                  // vertex in 2 T_2
  std::vector<std::size_t> starts;        // the T_2 0/1 vectors

  int index_of(const IntVec& v) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if (vertices[k] == v) return static_cast<int>(k);
    return -1;
  }
  std::string label(std::size_t v) const { return tuple_string(vertices[v]); }
};

inline IntVec gamma2_step(std::size_t d, const IntVec& v) {
  IntVec y = apply_digit(d, v);
  for (auto& x : y) x = std::min(x, x ? 2 : 0);
  return y;
}

inline Gamma2 build_gamma2(std::size_t cap = 512) {
  Gamma2 g;
  for (auto t : t2_masks()) {
    g.starts.push_back(g.vertices.size());
    g.vertices.push_back(indicator(t));
  }
  for (std::size_t q = 0; q < g.vertices.size(); ++q) {
    std::array<int, 3> e{};
    for (std::size_t d = 0; d < 3; ++d) {
      IntVec y = gamma2_step(d, g.vertices[q]);
      if (mask_of(y) == 0) {
        e[d] = -1;
        continue;
      }
      int idx = g.index_of(y);
      if (idx < 0) {
        idx = static_cast<int>(g.vertices.size());
        g.vertices.push_back(y);
        if (g.vertices.size() > cap) throw std::runtime_error("Gamma_2 closure exceeds its model bound");
      }
      e[d] = idx;
    }
    g.edges.push_back(e);
  }
  for (const auto& v : g.vertices) g.red.push_back(in_two_t2(v));
  return g;
}

struct Gamma2Checks {
  bool bounded_by_two = true;
  bool edges_dominated = true;  // A(i)V >= V' and equal supports
  bool red_absorbing = true;
  bool all_red_reachable = true;
  bool ok() const { return bounded_by_two && edges_dominated && red_absorbing && all_red_reachable; }
};

inline Gamma2Checks check_gamma2(const Gamma2& g) {
  Gamma2Checks c;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    for (auto x : g.vertices[v])
      if (x > 2) c.bounded_by_two = false;
    for (std::size_t d = 0; d < 3; ++d) {
      if (g.edges[v][d] < 0) continue;
      const IntVec& w = g.vertices[g.edges[v][d]];
      IntVec y = apply_digit(d, g.vertices[v]);
      if (mask_of(y) != mask_of(w)) c.edges_dominated = false;
      for (std::size_t i = 0; i < kDim; ++i)
        if (y[i] < w[i]) c.edges_dominated = false;
      if (g.red[v] && !g.red[g.edges[v][d]]) c.red_absorbing = false;
    }
  }
  for (auto t : t2_masks())
    if (g.index_of(indicator(t, 2)) < 0) c.all_red_reachable = false;
  return c;
}

namespace detail {

// Automaton state for words avoiding a fixed pattern.
inline int pattern_next(std::string_view pat, int s, char c) {
  std::string cur = std::string(pat.substr(0, static_cast<std::size_t>(s))) + c;
  for (std::size_t len = std::min(cur.size(), pat.size()); len > 0; --len)
    if (cur.compare(cur.size() - len, len, pat.substr(0, len)) == 0) return static_cast<int>(len);
  return 0;
}

}  // namespace detail

inline constexpr std::string_view kMirrorForbidden = "100100";

struct OffenderSearch {
  std::size_t max_offender_blocks = 0;  // longest block count ending outside 2T_2
  bool unbounded = false;
  std::size_t block_cap = 0;
  std::vector<std::string> longest_offenders;  // run lengths up to run_cap
  std::size_t run_cap = 0;
  bool extremal_in_longest = false;     // every extremal_label(k), k <= run_cap
  bool extremal_endpoints_ok = false;   // (1,0,1,1,1,0,0) to (2,2,2,0,2,2,1)
  bool printed_label_offends = false;   // some printed_extremal_label(k) ends outside 2T_2
  std::size_t paths_over_blocks = 0;    // block count from which every path ends in 2T_2
};

// Mirror labels of the longest offending paths from (1,0,1,1,1,0,0).
inline std::string extremal_label(std::size_t k) { return "0001001011" + std::string(k, '2') + "010"; }
// The same labels as printed in the source, differing in the ninth letter.
inline std::string printed_extremal_label(std::size_t k) { return "0001001021" + std::string(k, '2') + "010"; }

// Exhaustive search over Gamma_2 paths from T_2 whose labels avoid 100100.
// Blocks are maximal runs of 0s or 2s and single 1s.
inline OffenderSearch gamma2_offender_search(const Gamma2& g, std::size_t run_cap = 16, std::size_t block_cap = 40,
                                             std::string_view forbidden = kMirrorForbidden) {
  OffenderSearch out;
  out.block_cap = block_cap;
  out.run_cap = run_cap;
  const int P = static_cast<int>(forbidden.size());
  // Letter-level state: vertex, previous letter (3 = none), pattern state.
  auto encode = [&](std::size_t v, int prev, int ps) { return (v * 4 + static_cast<std::size_t>(prev)) * P + ps; };
  std::size_t S = g.vertices.size() * 4 * P;
  auto step = [&](std::size_t v, int prev, int ps, int c, std::size_t& nv, int& nps, bool& newblock) {
    int e = g.edges[v][static_cast<std::size_t>(c)];
    if (e < 0) return false;
    nps = detail::pattern_next(forbidden, ps, static_cast<char>('0' + c));
    if (nps == P) return false;
    nv = static_cast<std::size_t>(e);
    newblock = c == 1 || c != prev;
    return true;
  };
  // Longest further block count while staying outside 2T_2 (value iteration).
  std::vector<long> h(S, 0);
  for (std::size_t it = 0; it <= block_cap * S; ++it) {
    bool changed = false;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (g.red[v]) continue;
      for (int prev = 0; prev < 4; ++prev)
        for (int ps = 0; ps < P; ++ps) {
          long best = 0;
          for (int c = 0; c < 3; ++c) {
            std::size_t nv;
            int nps;
            bool nb;
            if (!step(v, prev, ps, c, nv, nps, nb) || g.red[nv]) continue;
            best = std::max(best, h[encode(nv, c, nps)] + (nb ? 1 : 0));
          }
          best = std::min<long>(best, static_cast<long>(block_cap));
          auto& cur = h[encode(v, prev, ps)];
          if (best > cur) {
            cur = best;
            changed = true;
          }
        }
    }
    if (!changed) break;
  }
  long maxb = 0;
  for (auto s : g.starts)
    if (!g.red[s]) maxb = std::max(maxb, h[encode(s, 3, 0)]);
  out.max_offender_blocks = static_cast<std::size_t>(maxb);
  out.unbounded = maxb >= static_cast<long>(block_cap);
  if (out.unbounded) return out;

  // Enumerate the longest offenders block by block.
  std::set<std::string> found;
  std::string label;
  std::function<void(std::size_t, int, int, long)> dfs = [&](std::size_t v, int prev, int ps, long blocks) {
    if (blocks == maxb) found.insert(label);
    for (int c = 0; c < 3; ++c) {
      if (c != 1 && c == prev) continue;
      std::size_t cv = v;
      int cps = ps;
      std::size_t lmax = c == 1 ? 1 : run_cap;
      for (std::size_t len = 1; len <= lmax; ++len) {
        std::size_t nv;
        int nps;
        bool nb;
        if (!step(cv, len == 1 ? prev : c, cps, c, nv, nps, nb) || g.red[nv]) break;
        cv = nv;
        cps = nps;
        if (blocks + 1 + h[encode(cv, c, cps)] < maxb) continue;
        label.append(len, static_cast<char>('0' + c));
        dfs(cv, c, cps, blocks + 1);
        label.resize(label.size() - len);
      }
    }
  };
  for (auto s : g.starts)
    if (!g.red[s] && h[encode(s, 3, 0)] == maxb) dfs(s, 3, 0, 0);
  out.longest_offenders.assign(found.begin(), found.end());

  out.paths_over_blocks = out.max_offender_blocks + 1;
  out.extremal_in_longest = true;
  out.extremal_endpoints_ok = true;
  for (std::size_t k = 1; k <= run_cap; ++k) {
    if (!found.count(extremal_label(k))) out.extremal_in_longest = false;
    IntVec v = indicator(mask_from_string("1011100"));
    for (char c : extremal_label(k)) v = gamma2_step(digit_of(c, 3), v);
    if (v != IntVec{2, 2, 2, 0, 2, 2, 1}) out.extremal_endpoints_ok = false;
    for (auto s : g.starts) {
      std::size_t x = s;
      bool alive = true;
      for (char c : printed_extremal_label(k)) {
        int e = g.edges[x][digit_of(c, 3)];
        if (e < 0) { alive = false; break; }
        x = static_cast<std::size_t>(e);
      }
      if (alive && !g.red[x]) out.printed_label_offends = true;
    }
  }
  return out;
}

// The factor of a word whose mirror is the extremal label.
inline std::string extremal_factor(std::size_t k) {
  std::string s = extremal_label(k);
  std::reverse(s.begin(), s.end());
  return s;
}

struct DoublingResult {
  bool precondition = false;
  bool contains_forbidden = false;
  bool paths_end_red = true;
  bool algebraic = true;  // A(W)V >= 2 Delta(A(W)V) and Delta in T_2 for V in T_2
  bool ok() const { return precondition && !contains_forbidden && paths_end_red && algebraic; }
};

inline DoublingResult doubling_check(const Gamma2& g, std::string_view word,
                                     std::size_t min_words = default_concat_words) {
  DoublingResult r;
  r.precondition = w_decompose(word).body.size() >= min_words;
  r.contains_forbidden = word.find("001001") != std::string_view::npos;
  if (!r.precondition || r.contains_forbidden) return r;
  for (auto s : g.starts) {
    std::size_t v = s;
    bool alive = true;
    for (auto it = word.rbegin(); it != word.rend() && alive; ++it) {
      int e = g.edges[v][digit_of(*it, 3)];
      if (e < 0) alive = false;
      else v = static_cast<std::size_t>(e);
    }
    if (!alive || !g.red[v]) r.paths_end_red = false;
  }
  BigIntMatrix m = BigIntMatrix::of_word(word);
  for (auto t : t2_masks()) {
    std::array<mpz_class, kDim> y;
    Mask ym = 0;
    for (std::size_t i = 0; i < kDim; ++i) {
      y[i] = 0;
      for (std::size_t j = 0; j < kDim; ++j)
        if (t & (1u << j)) y[i] += m(i, j);
      if (sgn(y[i]) != 0) ym |= static_cast<Mask>(1u << i);
    }
    if (!in_t2(ym)) r.algebraic = false;
    for (std::size_t i = 0; i < kDim; ++i)
      if (sgn(y[i]) != 0 && y[i] < 2) r.algebraic = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Long concatenations of W-words

struct ConcatenationReport {
  std::size_t random_samples = 0;
  std::size_t structured_samples = 0;
  std::size_t failures = 0;
  rational max_lambda{0};
  std::optional<std::string> witness;
  rational proof_constant;  // 7 * 3^3 * 2 / 2^9
  bool proof_constant_below = false;
  bool ok() const { return failures == 0 && proof_constant_below; }
};

// Concatenations of W-words built around the extremal factors, plus the
// 130-fold powers of every W-word with k <= kmax (these keep #Col = 2).
inline std::vector<std::string> concatenation_worst_cases(std::size_t kmax, std::size_t words = 130) {
  std::vector<std::string> out;
  for (const auto& w : w_enumerate(kmax)) {
    std::string p;
    for (std::size_t t = 0; t < words; ++t) p += w.render();
    out.push_back(p);
  }
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::string seg = extremal_factor(k) + "1";
    std::string w;
    while (w_decompose(w).body.size() < words) w += seg;
    out.push_back(w);
    std::string alt;
    while (w_decompose(alt).body.size() < words) alt += seg + "20" + std::string(k, '2') + "1";
    out.push_back(alt);
  }
  return out;
}

inline ConcatenationReport verify_concatenations(std::size_t samples, std::size_t kmax, std::uint64_t seed,
                                      std::size_t words = 130) {
  ConcatenationReport rep;
  std::mt19937_64 rng(seed);
  std::vector<std::string> inputs;
  for (std::size_t s = 0; s < samples; ++s) inputs.push_back(concat(random_wwords(rng, words, kmax)));
  auto structured = concatenation_worst_cases(kmax, words);
  rep.random_samples = samples;
  rep.structured_samples = structured.size();
  inputs.insert(inputs.end(), structured.begin(), structured.end());
  const rational bound(3, 4);
  std::mutex mu;
  parallel_for(inputs.size(), [&](std::size_t s) {
    ExactMatrix a = BigIntMatrix::of_word(inputs[s]).to_exact();
    bool h1 = in_H1(a);
    rational l = min_lambda(a);
    std::lock_guard<std::mutex> lock(mu);
    rep.max_lambda = rmax(rep.max_lambda, l);
    if (!h1 || l > bound) {
      ++rep.failures;
      if (!rep.witness) rep.witness = inputs[s];
    }
  });
  rep.proof_constant = rational(7 * 27 * 2, 512);
  rep.proof_constant.canonicalize();
  rep.proof_constant_below = rep.proof_constant < bound;
  return rep;
}

// ---------------------------------------------------------------------------
// Rows U_j^* A(w) never vanish

struct RowClosure {
  std::size_t start = 0;
  std::vector<Mask> classes;
  bool zero_reachable = false;
};

inline RowClosure row_nonvanishing_check(std::size_t start, std::size_t max_rounds = 256) {
  RowClosure r;
  r.start = start;
  std::set<Mask> seen{static_cast<Mask>(1u << start)};
  std::vector<Mask> order(seen.begin(), seen.end());
  for (std::size_t q = 0; q < order.size() && q < max_rounds * 3; ++q)
    for (std::size_t d = 0; d < 3; ++d) {
      Mask n = row_image_mask(d, order[q]);
      if (n == 0) r.zero_reachable = true;
      else if (seen.insert(n).second) order.push_back(n);
    }
  r.classes = order;
  return r;
}

// ---------------------------------------------------------------------------
// Head-word constants and the condition (C) certificate

inline const std::vector<std::string>& head_prefix_words() {
  static const std::vector<std::string> v{"", "10", "100", "0", "00", "2", "0102"};
  return v;
}

struct HeadConstants {
  rational Lambda0{1};
  rational lambda0{0};
};

inline HeadConstants head_constants() {
  HeadConstants c;
  for (const auto& w : head_prefix_words()) {
    ExactMatrix a = word_product(beta_generators(), w);
    c.Lambda0 = rmax(c.Lambda0, min_Lambda(a));
    c.lambda0 = rmax(c.lambda0, min_lambda(a));
  }
  return c;
}

struct NeedsMoreDigitsW : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CCertificate {
  WDecomposition decomposition;
  CutSequence cuts;
  ConditionCWitness witness;
  rational Lambda_measured{1};
  bool ok() const { return witness.ok && witness.chained_ok; }
};

// Cuts s_{k+1} = |W_0 W_1 ... W_{130k}| from the decomposition of the prefix.
inline CutSequence w_block_cuts(const WDecomposition& d, std::size_t block = 130) {
  std::vector<std::size_t> cuts{0, 0};
  std::size_t len = d.head.size();
  for (std::size_t i = 0; i < d.body.size(); ++i) {
    len += d.body[i].render().size();
    if ((i + 1) % block == 0) cuts.push_back(len);
  }
  return CutSequence(cuts);
}

// Verifies Q_n in H1 and H3(3/4) for s_2 <= n <= N (N = 0: up to the last
// cut); the H2 constant reported is the exact maximum of min_Lambda(Q_n),
// rounded up to an integer.
inline CCertificate condition_c_certificate(std::string_view prefix, std::size_t N, std::size_t block = 130) {
  CCertificate c;
  c.decomposition = w_decompose(prefix);
  if (c.decomposition.body.size() < 2 * block)
    throw NeedsMoreDigitsW("prefix decomposes into fewer than " + std::to_string(2 * block) + " W-words");
  c.cuts = w_block_cuts(c.decomposition, block);
  if (N == 0) N = c.cuts.last() - 1;
  if (N >= c.cuts.last()) throw NeedsMoreDigitsW("horizon N must lie below the last available cut");
  MatrixSequence seq = word_sequence(beta_generators(), prefix);
  rational lambda(3, 4);
  rational huge(mpz_class(1) << 4096);
  c.witness = check_condition_c(seq, c.cuts, lambda, huge, N);
  mpz_class ceil_L = c.witness.max_Lambda_seen.get_num() / c.witness.max_Lambda_seen.get_den();
  if (rational(ceil_L) < c.witness.max_Lambda_seen) ceil_L += 1;
  c.Lambda_measured = rational(ceil_L);
  c.witness.Lambda = c.Lambda_measured;
  c.witness.chained_ok = c.witness.max_chained_Lambda <= c.Lambda_measured / (1 - lambda);
  return c;
}

// Random (C)-regular word: a seeded concatenation of W-words.
inline std::string random_regular_word(std::uint64_t seed, std::size_t words, std::size_t kmax) {
  std::mt19937_64 rng(seed);
  return concat(random_wwords(rng, words, kmax));
}

// ---------------------------------------------------------------------------
// Uniform convergence scan for Pi_n(omega, R)

struct UniformConvergenceScan {
  std::vector<std::pair<std::size_t, double>> cauchy_gap;  // (depth, max gap)
  bool gaps_shrink = false;
  SupportScan support;
  double err_zero = 0;
  double err_two = 0;
  std::size_t limit_n = 0;
};

namespace detail {

inline double l1_gap_normalized(const std::array<double, kDim>& a, const std::array<double, kDim>& b) {
  double na = 0, nb = 0, s = 0;
  for (std::size_t i = 0; i < kDim; ++i) {
    na += a[i];
    nb += b[i];
  }
  for (std::size_t i = 0; i < kDim; ++i) s += std::abs(a[i] / na - b[i] / nb);
  return s;
}

}  // namespace detail

// Max over words of length n and extensions of length <= r of the l1 gap
// between Pi_n and Pi_{n+t}.
inline double cauchy_gap_scan(const ExactMatrix& R, std::size_t n, std::size_t r) {
  using Vec = std::array<double, kDim>;
  const auto& g = int_generators();
  Vec r0{};
  for (std::size_t i = 0; i < kDim; ++i) r0[i] = to_double(R[i]);
  std::vector<Vec> ext{r0};
  std::vector<Vec> layer{r0};
  for (std::size_t t = 1; t <= r; ++t) {
    std::vector<Vec> next;
    for (const auto& v : layer)
      for (std::size_t d = 0; d < 3; ++d) {
        Vec y{};
        for (std::size_t i = 0; i < kDim; ++i)
          for (std::size_t j = 0; j < kDim; ++j) y[i] += g[d][i][j] * v[j];
        next.push_back(y);
      }
    ext.insert(ext.end(), next.begin(), next.end());
    layer.swap(next);
  }
  std::size_t top = 1;
  for (std::size_t t = 0; t < std::min<std::size_t>(n, 4); ++t) top *= 3;
  std::vector<double> best(top, 0.0);
  parallel_for(top, [&](std::size_t idx) {
    using Mat = std::array<double, kDim * kDim>;
    std::string pre;
    for (std::size_t t = 0, x = idx; t < std::min<std::size_t>(n, 4); ++t, x /= 3) pre.push_back(static_cast<char>('0' + x % 3));
    Mat m{};
    for (std::size_t i = 0; i < kDim; ++i) m[i * kDim + i] = 1;
    auto mul = [&](const Mat& a, std::size_t d) {
      Mat o{};
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) {
          double s = 0;
          for (std::size_t l = 0; l < kDim; ++l)
            if (g[d][l][j]) s += a[i * kDim + l];
          o[i * kDim + j] = s;
        }
      double mx = 0;
      for (double x : o) mx = std::max(mx, x);
      if (mx > 0)
        for (double& x : o) x /= mx;
      return o;
    };
    for (char c : pre) m = mul(m, static_cast<std::size_t>(c - '0'));
    double local = 0;
    std::function<void(const Mat&, std::size_t)> rec = [&](const Mat& a, std::size_t depth) {
      if (depth == n) {
        std::vector<Vec> img(ext.size());
        for (std::size_t e = 0; e < ext.size(); ++e)
          for (std::size_t i = 0; i < kDim; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < kDim; ++j) s += a[i * kDim + j] * ext[e][j];
            img[e][i] = s;
          }
        for (std::size_t e = 1; e < ext.size(); ++e) {
          double ne = 0;
          for (double x : img[e]) ne += x;
          if (ne == 0) continue;
          local = std::max(local, detail::l1_gap_normalized(img[0], img[e]));
        }
        return;
      }
      for (std::size_t d = 0; d < 3; ++d) rec(mul(a, d), depth + 1);
    };
    rec(m, pre.size());
    best[idx] = local;
  });
  return *std::max_element(best.begin(), best.end());
}

inline UniformConvergenceScan uniform_convergence_scan(const ExactMatrix& R, const std::vector<std::size_t>& depths, std::size_t r,
                                      std::size_t support_depth, unsigned long limit_n) {
  UniformConvergenceScan s;
  for (auto n : depths) s.cauchy_gap.emplace_back(n, cauchy_gap_scan(R, n, r));
  s.gaps_shrink = true;
  for (std::size_t k = 1; k < s.cauchy_gap.size(); ++k)
    if (!(s.cauchy_gap[k].second < s.cauchy_gap[k - 1].second)) s.gaps_shrink = false;
  s.support = support_scan(support_depth, {0, 2, 4});
  auto C0 = exact_from_ints({{0}, {1}, {1}, {0}, {1}, {1}, {1}});
  auto C2 = exact_from_ints({{1}, {0}, {1}, {1}, {0}, {0}, {0}});
  s.limit_n = limit_n;
  s.err_zero = norm1(to_float(pi_constant('0', limit_n, R)) - to_float(normalized(C0)));
  s.err_two = norm1(to_float(pi_constant('2', limit_n, R)) - to_float(normalized(C2)));
  return s;
}

// ---------------------------------------------------------------------------
// DOT export

inline std::string gamma1_dot(const Gamma1& g) {
  std::ostringstream os;
  os << "digraph gamma1 {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    os << "  v" << v << " [label=\"" << g.label(v) << "\"" << (g.vertices[v].in_V2 ? ", color=red" : "") << "];\n";
  for (std::size_t v = 0; v < g.edges.size(); ++v)
    for (std::size_t d = 0; d < 3; ++d)
      if (g.edges[v][d] >= 0) os << "  v" << v << " -> v" << g.edges[v][d] << " [label=\"" << d << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string gamma2_dot(const Gamma2& g) {
  std::ostringstream os;
  os << "digraph gamma2 {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    os << "  v" << v << " [label=\"" << g.label(v) << "\"" << (g.red[v] ? ", color=red" : "") << "];\n";
  for (std::size_t v = 0; v < g.edges.size(); ++v)
    for (std::size_t d = 0; d < 3; ++d)
      if (g.edges[v][d] >= 0) os << "  v" << v << " -> v" << g.edges[v][d] << " [label=\"" << d << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mpl

#pragma once

#include "cubic.hpp"
#include "family.hpp"
#include "matrix.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

struct FloatInterval {
  double lo = 0;
  double hi = 0;
};

// Enclosure of beta of width at most `precision`.
inline FloatInterval beta_value(double precision) {
  unsigned bits = 8;
  while (std::ldexp(1.0, -static_cast<int>(bits)) > precision && bits < 200) ++bits;
  auto [lo, hi] = beta_bracket(bits + 2);
  // Round outward.
  double l = lo.get_d(), h = hi.get_d();
  return {std::nextafter(l, 0.0), std::nextafter(h, 4.0)};
}

// Greedy digits: eps_n = floor(beta^n (x - s_{n-1})).
inline std::string parry_digits(const CubicFieldElement& x, std::size_t n) {
  if (x.sign() < 0 || !(x < CubicFieldElement(1))) throw std::invalid_argument("parry_digits needs 0 <= x < 1");
  std::string out;
  CubicFieldElement r = x, b = CubicFieldElement::beta();
  for (std::size_t k = 0; k < n; ++k) {
    r = r * b;
    if (CubicFieldElement(1) <= r) {
      out.push_back('1');
      r = r - CubicFieldElement(1);
    } else {
      out.push_back('0');
    }
  }
  return out;
}

// Partial sum s_n = sum eps_k / beta^k.
inline CubicFieldElement beta_sum(const std::string& digits) {
  CubicFieldElement s, p(1), inv = CubicFieldElement::beta().inverse();
  for (char c : digits) {
    p = p * inv;
    if (c == '1') s = s + p;
    else if (c != '0') throw std::invalid_argument("binary digit expected");
  }
  return s;
}

// Finite-type rule: every factor 11 is followed by 00 (as far as the word goes).
inline bool is_admissible(const std::string& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w[k] != '1' || w[k + 1] != '1') continue;
    if (k + 2 < w.size() && w[k + 2] != '0') return false;
    if (k + 3 < w.size() && w[k + 3] != '0') return false;
  }
  return true;
}

inline const std::array<std::string, 3>& beta_blocks() {
  static const std::array<std::string, 3> blocks{"0", "10", "1100"};
  return blocks;
}

inline std::string expand(const std::string& ternary) {
  std::string out;
  for (char c : ternary) out += beta_blocks().at(digit_of(c, 3));
  return out;
}

class IncompleteBlock : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Left-to-right decomposition into the blocks 0, 10, 1100.
inline std::string recode(const std::string& binary) {
  std::string out;
  std::size_t k = 0;
  while (k < binary.size()) {
    if (binary[k] == '0') {
      out.push_back('0');
      k += 1;
    } else if (binary[k] != '1') {
      throw std::invalid_argument("binary digit expected");
    } else if (k + 1 >= binary.size()) {
      throw IncompleteBlock("dangling block at position " + std::to_string(k));
    } else if (binary[k + 1] == '0') {
      out.push_back('1');
      k += 2;
    } else {
      if (k + 4 > binary.size()) throw IncompleteBlock("dangling block at position " + std::to_string(k));
      if (binary.compare(k, 4, "1100") != 0) throw std::invalid_argument("inadmissible factor at position " + std::to_string(k));
      out.push_back('2');
      k += 4;
    }
  }
  return out;
}

// Candidate successors V_e(gamma) before pruning.
inline std::vector<CubicFieldElement> vertex_successors(const CubicFieldElement& g, std::size_t e) {
  CubicFieldElement b = CubicFieldElement::beta(), one(1);
  CubicFieldElement bb1 = b * (b - one);
  std::vector<CubicFieldElement> out;
  if (e == 0) {
    for (int u = 0; u < 2; ++u) out.push_back(g * b - CubicFieldElement(u) * bb1);
  } else if (e == 1) {
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) out.push_back(g * b * b + b - (CubicFieldElement(u) * b + CubicFieldElement(v)) * bb1);
  } else if (e == 2) {
    CubicFieldElement b2 = b * b, b3 = b2 * b, b4 = b3 * b;
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        for (int w = 0; w < 2; ++w)
          for (int x = 0; x < 2; ++x) {
            CubicFieldElement s = CubicFieldElement(u) * b3 + CubicFieldElement(v) * b2 + CubicFieldElement(w) * b + CubicFieldElement(x);
            out.push_back(g * b4 + b3 + b2 - s * bb1);
          }
  } else {
    throw std::invalid_argument("edge label must be 0, 1 or 2");
  }
  return out;
}

inline bool in_vertex_window(const CubicFieldElement& g) {
  return CubicFieldElement(-1) < g && g < CubicFieldElement::beta();
}

// The seven vertices in the reference order v_1, ..., v_7.
inline std::vector<CubicFieldElement> reference_vertices() {
  CubicFieldElement b = CubicFieldElement::beta(), one(1);
  CubicFieldElement s = (b - one) * (b - one);
  return {CubicFieldElement(0), one, one - s, -s, b - one, b - s, b * (b - one)};
}

// Breadth-first closure of {0} under the pruned relations.
inline std::vector<CubicFieldElement> vertex_closure(std::size_t cap = 64) {
  std::vector<CubicFieldElement> seen{CubicFieldElement(0)};
  for (std::size_t head = 0; head < seen.size(); ++head) {
    for (std::size_t e = 0; e < 3; ++e)
      for (const auto& g : vertex_successors(seen[head], e)) {
        if (!in_vertex_window(g)) continue;
        bool known = false;
        for (const auto& s : seen)
          if (s == g) {
            known = true;
            break;
          }
        if (known) continue;
        seen.push_back(g);
        if (seen.size() > cap) throw std::runtime_error("vertex closure exceeded its cap");
      }
  }
  return seen;
}

// Incidence matrices over the given vertex ordering.
inline Family incidence_matrices(const std::vector<CubicFieldElement>& verts) {
  Family out;
  for (std::size_t e = 0; e < 3; ++e) {
    ExactMatrix m(verts.size(), verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (const auto& g : vertex_successors(verts[i], e)) {
        if (!in_vertex_window(g)) continue;
        for (std::size_t j = 0; j < verts.size(); ++j)
          if (verts[j] == g) m(i, j) = 1;
      }
    out.push_back(m);
  }
  return out;
}

// Weighted matrices M(0) = A(0)/2, M(1) = A(1)/4, M(2) = A(2)/16.
inline const Family& beta_weighted() {
  static const Family m = [] {
    const Family& a = beta_generators();
    return Family{a[0] / rational(2), a[1] / rational(4), a[2] / rational(16)};
  }();
  return m;
}

inline const ExactMatrix& beta_R() {
  static const ExactMatrix r = ExactMatrix::column({rational(3, 5), rational(2, 5), rational(13, 20), rational(1, 5),
                                                    rational(3, 5), rational(3, 10), rational(1, 5)});
  return r;
}

inline ExactMatrix weighted_product(const std::string& w) { return word_product(beta_weighted(), w); }

// Cylinder mass through the first-digit case split.
inline rational mu_cylinder(const std::string& xi) {
  if (xi.empty()) throw std::invalid_argument("mu_cylinder needs a nonempty word");
  const Family& m = beta_weighted();
  ExactMatrix tail = product(weighted_product(xi.substr(1)), beta_R());
  switch (digit_of(xi[0], 3)) {
    case 0:
      return tail[0];
    case 1:
      return product(m[0], tail)[1];
    default:
      return product(product(m[1], m[0]), tail)[1];
  }
}

// Same mass through the vertex-vector identity: shift the binary expansion by
// one digit and read the entry of the vertex that digit lands on.
inline rational mu_cylinder_vertex_form(const std::string& xi) {
  std::string b = expand(xi);
  std::string rest = recode(b.substr(1));
  ExactMatrix v = product(weighted_product(rest), beta_R());
  return b[0] == '0' ? v[0] : v[1];
}

inline rational nu_cylinder(const std::string& xi) { return norm1(product(weighted_product(xi), beta_R())); }

struct BetaInterval {
  CubicFieldElement left;
  CubicFieldElement length;
};

inline BetaInterval beta_interval(const std::string& xi) {
  std::string b = expand(xi);
  CubicFieldElement inv = CubicFieldElement::beta().inverse();
  return {beta_sum(b), cubic_pow(inv, static_cast<unsigned>(b.size()))};
}

// Infima over depth <= D of U_3* Pi_k (all words), U_1* Pi_k (words starting
// with 1 or 2, plus k = 0) and U_5* Pi_k (words starting with 0 or 1, plus k = 0).
struct FunctionalInfima {
  double F = 1, G = 1, H = 1;
  std::size_t depth = 0;
};

inline FunctionalInfima functional_infima(std::size_t depth) {
  FunctionalInfima inf;
  inf.depth = depth;
  const Family& a = beta_generators();
  std::vector<std::array<double, 7>> fa(3);
  std::array<std::array<std::array<double, 7>, 7>, 3> g{};
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) g[e][i][j] = a[e](i, j).get_d();
  std::array<double, 7> r{};
  for (std::size_t i = 0; i < 7; ++i) r[i] = beta_R()[i].get_d();
  // Pi_k(zeta) = A(zeta_1..zeta_k) R normalized; iterate on suffix-extended words:
  // vectors for words of length k are A(w) R, built by prepending digits.
  struct Node {
    std::array<double, 7> v;
    char first;
  };
  auto update = [&](const std::array<double, 7>& v, char first) {
    double s = 0;
    for (double x : v) s += x;
    if (s == 0) return;
    inf.F = std::min(inf.F, v[2] / s);
    if (first != '0') inf.G = std::min(inf.G, v[0] / s);
    if (first != '2') inf.H = std::min(inf.H, v[4] / s);
  };
  update(r, 'x');
  std::vector<std::array<double, 7>> level{r};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<std::array<double, 7>> next;
    next.reserve(level.size() * 3);
    for (std::size_t e = 0; e < 3; ++e)
      for (const auto& v : level) {
        std::array<double, 7> w{};
        for (std::size_t i = 0; i < 7; ++i)
          for (std::size_t j = 0; j < 7; ++j) w[i] += g[e][i][j] * v[j];
        double s = 0;
        for (double x : w) s += x;
        for (double& x : w) x /= s;
        update(w, static_cast<char>('0' + e));
        next.push_back(w);
      }
    level.swap(next);
  }
  return inf;
}

struct RatioDiagnostic {
  rational mu;
  rational nu;
  rational ratio;
  char first = '0';
  std::size_t run = 0;  // length m of the leading run of the first digit
  double bound = 0;
  std::string rule;
  bool ok = true;
};

inline RatioDiagnostic ratio_diagnostics(const std::string& xi, const FunctionalInfima& inf) {
  if (xi.empty()) throw std::invalid_argument("ratio_diagnostics needs n >= 1");
  RatioDiagnostic d;
  d.mu = mu_cylinder(xi);
  d.nu = nu_cylinder(xi);
  d.ratio = d.nu / d.mu;
  d.first = xi[0];
  while (d.run < xi.size() && xi[d.run] == xi[0]) ++d.run;
  double n = static_cast<double>(xi.size());
  const ExactMatrix& R = beta_R();
  double UR = norm1(R).get_d();
  if (d.first == '1') {
    d.bound = 2 * norm1(beta_weighted()[1]).get_d() / inf.F;
    d.rule = "2||M(1)|| / inf F";
  } else if (d.first == '0') {
    if (d.run == xi.size()) {
      d.bound = n * UR / R[0].get_d();
      d.rule = "n U*R / U_1*R";
    } else {
      d.bound = n / inf.G;
      d.rule = "n / inf G";
    }
  } else {
    if (d.run == xi.size()) {
      d.bound = 1.5 * n * UR / R[4].get_d();
      d.rule = "3n U*R / (2 U_5*R)";
    } else {
      d.bound = 1.5 * n / inf.H;
      d.rule = "3n / (2 inf H)";
    }
  }
  d.ok = d.ratio >= 1 && d.ratio.get_d() <= d.bound * (1 + 1e-12);
  return d;
}

struct WeakGibbsRow {
  std::size_t n = 0;
  double max_abs_log_ratio_over_n = 0;
  double max_nu_mu_root = 0;  // max over cylinders of (nu/mu)^(1/n)
  std::size_t cylinders = 0;
};

struct WeakGibbsReport {
  std::size_t depth = 0;
  std::vector<WeakGibbsRow> rows;
  bool decreasing = true;
};

namespace detail {

struct GibbsContext {
  std::size_t N = 0, D = 0;
  std::vector<double> psi;  // indexed by base-3 window of length D, first digit most significant
  std::array<std::array<std::array<double, 7>, 7>, 3> m{};
  std::array<double, 7> r{};
  std::vector<WeakGibbsRow>* rows = nullptr;
};

inline std::size_t pow3(std::size_t k) {
  std::size_t p = 1;
  while (k--) p *= 3;
  return p;
}

}  // namespace detail

// Psi estimated at depth D as log(U* M(z_1) Pi_{D-1}(sigma z, R)); cylinder
// representatives are padded with the digit 1. Reports, for n <= N, the
// maximum over all 3^n cylinders of |log(mu / exp(sum Psi))| / n.
inline WeakGibbsReport psi_and_weak_gibbs(std::size_t N, std::size_t D, std::size_t n_min = 1) {
  if (D < 1 || N < 1) throw std::invalid_argument("psi_and_weak_gibbs needs N, D >= 1");
  detail::GibbsContext ctx;
  ctx.N = N;
  ctx.D = D;
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) ctx.m[e][i][j] = beta_weighted()[e](i, j).get_d();
  for (std::size_t i = 0; i < 7; ++i) ctx.r[i] = beta_R()[i].get_d();
  // Psi table: for each window z_1..z_D compute v = A(z_2..z_D) R normalized,
  // then log of U* M(z_1) v.
  std::size_t W = detail::pow3(D);
  ctx.psi.assign(W, 0.0);
  for (std::size_t idx = 0; idx < W; ++idx) {
    std::vector<std::size_t> z(D);
    std::size_t t = idx;
    for (std::size_t k = D; k-- > 0;) {
      z[k] = t % 3;
      t /= 3;
    }
    std::array<double, 7> v = ctx.r;
    for (std::size_t k = D; k-- > 1;) {
      std::array<double, 7> w{};
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) w[i] += ctx.m[z[k]][i][j] * v[j];
      double s = 0;
      for (double x : w) s += x;
      for (double& x : w) x /= s;
      v = w;
    }
    double u = 0;
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) u += ctx.m[z[0]][i][j] * v[j];
    ctx.psi[idx] = std::log(u);
  }
  std::vector<WeakGibbsRow> rows(N + 1);
  for (std::size_t n = 0; n <= N; ++n) rows[n].n = n;
  // Depth-first over cylinders. mu(J_xi) = c(xi_1)* M(xi_2..xi_n) R with
  // c(0) = U_1*, c(1) = U_2* M(0), c(2) = U_2* M(1) M(0); nu = U* M(xi) R.
  std::array<std::array<double, 7>, 3> heads{};
  heads[0][0] = 1;
  for (std::size_t j = 0; j < 7; ++j) heads[1][j] = ctx.m[0][1][j];
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t k = 0; k < 7; ++k) heads[2][j] += ctx.m[1][1][k] * ctx.m[0][k][j];
  std::vector<std::size_t> digits;
  // psi window value for position k of the padded representative.
  auto window_at = [&](std::size_t k) {
    std::size_t idx = 0;
    for (std::size_t t = 0; t < D; ++t) {
      std::size_t pos = k + t;
      idx = idx * 3 + (pos < digits.size() ? digits[pos] : 1);
    }
    return idx;
  };
  struct Frame {
    std::array<double, 7> mu_row;
    std::array<double, 7> nu_row;
    double full_psi;  // sum of Psi over windows lying fully inside the prefix
  };
  std::function<void(const Frame&)> dfs = [&](const Frame& f) {
    std::size_t n = digits.size();
    if (n >= 1 && n >= n_min) {
      double mu = 0, nu = 0;
      for (std::size_t i = 0; i < 7; ++i) {
        mu += f.mu_row[i] * ctx.r[i];
        nu += f.nu_row[i] * ctx.r[i];
      }
      double s = f.full_psi;
      std::size_t first_partial = n >= D ? n - D + 1 : 0;
      for (std::size_t k = first_partial; k < n; ++k) s += ctx.psi[window_at(k)];
      double lr = std::abs(std::log(mu) - s) / static_cast<double>(n);
      auto& row = rows[n];
      row.max_abs_log_ratio_over_n = std::max(row.max_abs_log_ratio_over_n, lr);
      row.max_nu_mu_root = std::max(row.max_nu_mu_root, std::pow(nu / mu, 1.0 / static_cast<double>(n)));
      ++row.cylinders;
    }
    if (n == N) return;
    for (std::size_t e = 0; e < 3; ++e) {
      Frame g;
      digits.push_back(e);
      if (n == 0) {
        g.mu_row = heads[e];
      } else {
        g.mu_row = {};
        for (std::size_t i = 0; i < 7; ++i)
          for (std::size_t j = 0; j < 7; ++j) g.mu_row[j] += f.mu_row[i] * ctx.m[e][i][j];
      }
      g.nu_row = {};
      if (n == 0) {
        for (std::size_t i = 0; i < 7; ++i)
          for (std::size_t j = 0; j < 7; ++j) g.nu_row[j] += ctx.m[e][i][j];
      } else {
        for (std::size_t i = 0; i < 7; ++i)
          for (std::size_t j = 0; j < 7; ++j) g.nu_row[j] += f.nu_row[i] * ctx.m[e][i][j];
      }
      g.full_psi = f.full_psi;
      if (n + 1 >= D) g.full_psi += ctx.psi[window_at(n + 1 - D)];
      dfs(g);
      digits.pop_back();
    }
  };
  Frame root{};
  dfs(root);
  WeakGibbsReport rep;
  rep.depth = D;
  for (std::size_t n = std::max<std::size_t>(1, n_min); n <= N; ++n) rep.rows.push_back(rows[n]);
  return rep;
}

// Monotone decrease of the reported statistic over [from, to].
inline bool weak_gibbs_decreasing(const WeakGibbsReport& rep, std::size_t from, std::size_t to) {
  double prev = 0;
  bool first = true;
  for (const auto& r : rep.rows) {
    if (r.n < from || r.n > to) continue;
    if (!first && r.max_abs_log_ratio_over_n > prev) return false;
    prev = r.max_abs_log_ratio_over_n;
    first = false;
  }
  return true;
}

// Pi_n(w, V) = A(w) V / ||A(w) V|| with the unweighted generators.
inline ExactMatrix pi_n(const std::string& w, const ExactMatrix& v) { return normalized(product(word_product(beta_generators(), w), v)); }

// Pi_n along the constant word c^n.
inline ExactMatrix pi_constant(char c, unsigned long n, const ExactMatrix& v) {
  return normalized(product(matrix_power(beta_generators().at(digit_of(c, 3)), n), v));
}

struct SupportScan {
  std::size_t words = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

// Boolean scan over all words of length n: the support of A(w) R must contain
// the given (0-based) coordinates.
inline SupportScan support_scan(std::size_t n, const std::vector<std::size_t>& required) {
  using Bits = std::array<bool, 7>;
  const Family& a = beta_generators();
  SupportScan out;
  Bits r{};
  for (std::size_t i = 0; i < 7; ++i) r[i] = !is_zero(beta_R()[i]);
  std::string w;
  // Suffix-first recursion: A(w) R is built by prepending letters.
  std::function<void(const Bits&)> rec = [&](const Bits& v) {
    if (w.size() == n) {
      ++out.words;
      for (auto c : required)
        if (!v[c]) {
          if (out.failures++ == 0) out.first_failure = std::string(w.rbegin(), w.rend());
          break;
        }
      return;
    }
    for (std::size_t e = 0; e < 3; ++e) {
      Bits u{};
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
          if (v[j] && !is_zero(a[e](i, j))) u[i] = true;
      w.push_back(static_cast<char>('0' + e));
      rec(u);
      w.pop_back();
    }
  };
  rec(r);
  return out;
}

struct NamedIdentity {
  std::string name;
  bool holds = false;
};

// Row-vector facts used in the ratio bounds, checked exactly.
inline std::vector<NamedIdentity> scaling_identities(std::size_t mmax = 20) {
  const Family& m = beta_weighted();
  auto U = [](std::size_t i) { return ExactMatrix::unit(7, i - 1).transpose(); };
  ExactMatrix ones = ExactMatrix::ones(7).transpose();
  auto geq = [](const ExactMatrix& x, const ExactMatrix& y) {
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] < y[k]) return false;
    return true;
  };
  std::vector<NamedIdentity> out;
  ExactMatrix u2m0 = product(U(2), m[0]);
  ExactMatrix u2m1m0 = product(product(U(2), m[1]), m[0]);
  out.push_back({"U*M(0) >= U_1*", geq(product(ones, m[0]), U(1))});
  out.push_back({"U*M(1) >= U_2*M(0)", geq(product(ones, m[1]), u2m0)});
  out.push_back({"U*M(2) >= U_2*M(1)M(0)", geq(product(ones, m[2]), u2m1m0)});
  out.push_back({"U_2*M(0) = U_3*/2", u2m0 == U(3) / rational(2)});
  bool zero_run = true, two_run = true;
  ExactMatrix z = U(1), t = u2m1m0;
  for (std::size_t k = 1; k <= mmax; ++k) {
    // z = U_1* M(0)^(k-1), t = U_2* M(1) M(0) M(2)^(k-1)
    if (z != U(1) * rpow(rational(1, 2), k - 1)) zero_run = false;
    if (t != U(5) * rpow(rational(1, 2), 4 * k - 1)) two_run = false;
    z = product(z, m[0]);
    t = product(t, m[2]);
  }
  out.push_back({"U_1*M(0)^(m-1) = 2^-(m-1) U_1*", zero_run});
  out.push_back({"U_2*M(1)M(0)M(2)^(m-1) = 2^-(4m-1) U_5*", two_run});
  return out;
}

}  // namespace mpl

#pragma once

#include "condc.hpp"
#include "hclass.hpp"
#include "matrix.hpp"
#include "projective.hpp"
#include "spectral.hpp"

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

// ---------------------------------------------------------------------------
// Block-triangular products

struct BlockTriStep {
  std::size_t n = 0;
  rational eps;             // eps_n
  rational partial_sum;     // sum_{m=1..n} eps_m
  rational Lambda_P;        // min_Lambda(P_n)
  rational lambda_P;        // min_lambda(P_n)
  rational Lambda_bound;    // S^{delta-1} Lambda
  rational lambda_bound;    // eps_n S^{delta-2} Lambda
  bool Lambda_ok = true;
  bool lambda_ok = true;
};

struct BlockTriReport {
  std::size_t delta = 0;
  rational Lambda;  // max min_Lambda(A_n)
  rational S;       // 1 + Lambda (1 + sum eps_n) at the horizon
  std::vector<BlockTriStep> steps;
  bool ok() const {
    for (const auto& s : steps)
      if (!s.Lambda_ok || !s.lambda_ok) return false;
    return true;
  }
};

// Reverses the order of rows and columns.
inline ExactMatrix flip_conjugate(const ExactMatrix& a) {
  ExactMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(a.rows() - 1 - i, a.cols() - 1 - j) = a(i, j);
  return out;
}

namespace detail {

inline ExactMatrix sub_block(const ExactMatrix& a, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  ExactMatrix out(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = a(i, j);
  return out;
}

inline rational max_col_norm(const ExactMatrix& m) {
  rational best(0);
  for (std::size_t j = 0; j < m.cols(); ++j) best = rmax(best, column_norm(m, j));
  return best;
}

}  // namespace detail

// Partial sums of the summability condition and the H2/H3 profile of P_n
// predicted by the block-triangular argument. With upper = true the
// sequence is first conjugated by the order-reversing permutation.
inline BlockTriReport blocktri_check(MatrixSequence seq, std::vector<std::size_t> sizes, bool upper = false) {
  if (seq.empty() || sizes.empty()) throw std::invalid_argument("blocktri_check: empty input");
  std::size_t d = 0;
  for (auto s : sizes) {
    if (s == 0) throw std::invalid_argument("blocktri_check: empty block");
    d += s;
  }
  if (upper) {
    for (auto& a : seq) a = flip_conjugate(a);
    std::reverse(sizes.begin(), sizes.end());
  }
  std::vector<std::size_t> off{0};
  for (auto s : sizes) off.push_back(off.back() + s);
  std::size_t delta = sizes.size();
  BlockTriReport rep;
  rep.delta = delta;
  rep.Lambda = 1;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const auto& a = seq[n];
    if (a.rows() != d || a.cols() != d) throw std::invalid_argument("blocktri_check: matrix " + std::to_string(n + 1) + " has the wrong size");
    for (std::size_t bi = 0; bi < delta; ++bi)
      for (std::size_t bj = 0; bj < delta; ++bj)
        for (std::size_t i = off[bi]; i < off[bi + 1]; ++i)
          for (std::size_t j = off[bj]; j < off[bj + 1]; ++j) {
            bool zero = is_zero(a(i, j));
            if (bj > bi && !zero)
              throw std::invalid_argument("blocktri_check: matrix " + std::to_string(n + 1) + " is not block-triangular");
            if (bj <= bi && (zero || a(i, j) < 0))
              throw std::invalid_argument("blocktri_check: matrix " + std::to_string(n + 1) + " has a non-positive block");
          }
    rep.Lambda = rmax(rep.Lambda, min_Lambda(a));
  }
  std::vector<ExactMatrix> diag;
  for (std::size_t b = 0; b < delta; ++b) diag.push_back(ExactMatrix::identity(sizes[b]));
  ExactMatrix P = ExactMatrix::identity(d);
  rational partial(0);
  std::vector<rational> eps;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    for (std::size_t b = 0; b < delta; ++b)
      diag[b] = product(diag[b], detail::sub_block(seq[n], off[b], off[b + 1], off[b], off[b + 1]));
    rational e(0);
    for (std::size_t b = 0; b + 1 < delta; ++b) {
      rational top = detail::max_col_norm(diag[b + 1]);
      for (std::size_t j = 0; j < sizes[b]; ++j) e = rmax(e, top / column_norm(diag[b], j));
    }
    partial += e;
    eps.push_back(e);
  }
  rep.S = 1 + rep.Lambda * (1 + partial);
  rational S_pow_1(1), S_pow_2(1);
  for (std::size_t t = 1; t < delta; ++t) S_pow_1 *= rep.S;
  for (std::size_t t = 2; t < delta; ++t) S_pow_2 *= rep.S;
  rational running(0);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    P = product(P, seq[n]);
    running += eps[n];
    BlockTriStep st;
    st.n = n + 1;
    st.eps = eps[n];
    st.partial_sum = running;
    st.Lambda_P = min_Lambda(P);
    st.lambda_P = min_lambda(P);
    st.Lambda_bound = S_pow_1 * rep.Lambda;
    st.lambda_bound = delta >= 2 ? eps[n] * S_pow_2 * rep.Lambda : rational(0);
    st.Lambda_ok = st.Lambda_P <= st.Lambda_bound;
    st.lambda_ok = st.lambda_P <= st.lambda_bound;
    rep.steps.push_back(std::move(st));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// 2x2 upper-triangular products

struct Tri2x2Report {
  std::size_t n = 0;
  rational s_partial;
  bool s_finite = true;         // partial sums below the divergence threshold
  ExactMatrix column2_direct;   // normalized P_n U_2 from the product
  ExactMatrix column2_formula;  // (s_n/(s_n+1), 1/(s_n+1))
  ExactMatrix column1_direct;
  std::vector<double> limit2;   // limit prediction for column 2
  bool exact_match = false;
};

using RationalSeq = std::function<rational(std::size_t)>;  // index n >= 1

inline Tri2x2Report tri2x2_limit(const RationalSeq& a, const RationalSeq& b, const RationalSeq& d, std::size_t n,
                                 double divergence_threshold = 1e12) {
  if (n == 0) throw std::invalid_argument("tri2x2_limit: n >= 1");
  Tri2x2Report rep;
  rep.n = n;
  ExactMatrix P = ExactMatrix::identity(2);
  rational a_prod(1), d_prod(1), s(0);
  for (std::size_t k = 1; k <= n; ++k) {
    rational ak = a(k), bk = b(k), dk = d(k);
    if (ak * dk <= 0 || bk < 0) throw std::invalid_argument("tri2x2_limit: need a_n d_n > 0 and b_n >= 0");
    d_prod *= dk;
    s += a_prod * bk / d_prod;
    a_prod *= ak;
    ExactMatrix m(2, 2);
    m(0, 0) = ak;
    m(0, 1) = bk;
    m(1, 1) = dk;
    P = product(P, m);
  }
  s.canonicalize();
  rep.s_partial = s;
  rep.s_finite = s.get_d() < divergence_threshold;
  rep.column2_direct = normalized(P.col(1));
  rep.column1_direct = normalized(P.col(0));
  rep.column2_formula = ExactMatrix(2, 1);
  rep.column2_formula[0] = s / (s + 1);
  rep.column2_formula[1] = 1 / (s + 1);
  rep.exact_match = rep.column2_direct == rep.column2_formula && rep.column1_direct == exact_from_ints({{1}, {0}});
  if (rep.s_finite) rep.limit2 = {rep.column2_formula[0].get_d(), rep.column2_formula[1].get_d()};
  else rep.limit2 = {1.0, 0.0};
  return rep;
}

// ---------------------------------------------------------------------------
// Triangular products without a common limit direction

struct TwoLimitsReport {
  std::size_t k = 0;
  ExactMatrix P_nk, P_nk_plus_k;
  ExactMatrix closed_nk, closed_nk_plus_k;
  bool exact_match = false;
  std::vector<double> dir_nk;          // normalized P_{n_k} U
  std::vector<double> dir_nk_plus_k;   // normalized P_{n_k+k} U
  double gap_to_first_limit = 0;       // l1 distance to (3/4, 0, 1/4)
  double gap_to_second_limit = 0;      // l1 distance to (1, 0, 0)
};

inline ExactMatrix two_limits_matrix(std::size_t n) {
  // n is a triangular number iff 8n + 1 is a perfect square
  mpz_class t = 8 * mpz_class(static_cast<unsigned long>(n)) + 1;
  mpz_class r = sqrt(t);
  if (r * r == t) return exact_from_ints({{1, 1, 1}, {0, 0, 0}, {0, 0, 2}});
  return exact_from_ints({{1, 3, 1}, {0, 4, 0}, {0, 0, 1}});
}

inline TwoLimitsReport two_limits_products(std::size_t k) {
  if (k == 0) throw std::invalid_argument("two_limits_products: k >= 1");
  TwoLimitsReport rep;
  rep.k = k;
  std::size_t nk = k * (k + 1) / 2;
  ExactMatrix P = ExactMatrix::identity(3);
  for (std::size_t n = 1; n <= nk + k; ++n) {
    P = product(P, two_limits_matrix(n));
    if (n == nk) rep.P_nk = P;
  }
  rep.P_nk_plus_k = P;
  mpz_class two_k = mpz_class(1) << k, four_k = mpz_class(1) << (2 * k);
  long kk = static_cast<long>(k);
  rep.closed_nk = ExactMatrix(3, 3);
  rep.closed_nk(0, 0) = 1;
  rep.closed_nk(0, 1) = 1;
  rep.closed_nk(0, 2) = rational(3 * two_k - 2 * kk - 3);
  rep.closed_nk(2, 2) = rational(two_k);
  rep.closed_nk_plus_k = ExactMatrix(3, 3);
  rep.closed_nk_plus_k(0, 0) = 1;
  rep.closed_nk_plus_k(0, 1) = rational(2 * four_k - 1);
  rep.closed_nk_plus_k(0, 2) = rational(3 * two_k - kk - 3);
  rep.closed_nk_plus_k(2, 2) = rational(two_k);
  rep.exact_match = rep.P_nk == rep.closed_nk && rep.P_nk_plus_k == rep.closed_nk_plus_k;
  ExactMatrix U = exact_from_ints({{1}, {1}, {1}});
  auto dir = [&](const ExactMatrix& m) {
    ExactMatrix v = normalized(product(m, U));
    return std::vector<double>{v[0].get_d(), v[1].get_d(), v[2].get_d()};
  };
  rep.dir_nk = dir(rep.P_nk);
  rep.dir_nk_plus_k = dir(rep.P_nk_plus_k);
  rep.gap_to_first_limit = std::abs(rep.dir_nk[0] - 0.75) + std::abs(rep.dir_nk[1]) + std::abs(rep.dir_nk[2] - 0.25);
  rep.gap_to_second_limit =
      std::abs(rep.dir_nk_plus_k[0] - 1.0) + std::abs(rep.dir_nk_plus_k[1]) + std::abs(rep.dir_nk_plus_k[2]);
  return rep;
}

// ---------------------------------------------------------------------------
// Positive matrices

struct PositiveLimitReport {
  double gamma = 0;                 // max tau(A_i)
  std::vector<double> limit;        // X_* estimate at the horizon
  std::vector<double> errors;       // l1 distance of P_n X/|P_n X| to the estimate
  double C = 0;                     // fitted on n <= horizon/4
  bool rate_ok = true;              // errors <= C gamma^n on horizon/4 < n <= 3 horizon/4
};

inline PositiveLimitReport positive_family_limit(const MatrixSequence& seq, const ExactMatrix& X) {
  if (seq.empty()) throw std::invalid_argument("positive_family_limit: empty sequence");
  PositiveLimitReport rep;
  std::size_t d = seq.front().rows();
  for (const auto& a : seq) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] <= 0) throw std::invalid_argument("positive_family_limit: matrices must be positive");
    rep.gamma = std::max(rep.gamma, tau(a));
  }
  // Left products applied to X: P_n X = A_1 (A_2 (... A_n X)); iterate in floats
  // from the right for each n would be quadratic, so use row vectors of P_n.
  FloatMatrix P = FloatMatrix::identity(d);
  FloatMatrix x = to_float(X);
  std::vector<std::vector<double>> dirs;
  for (const auto& a : seq) {
    P = product(P, to_float(a));
    double mx = 0;
    for (double v : P.data()) mx = std::max(mx, v);
    for (std::size_t i = 0; i < P.size(); ++i) P[i] /= mx;
    FloatMatrix px = product(P, x);
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += px[i];
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = px[i] / s;
    dirs.push_back(v);
  }
  rep.limit = dirs.back();
  for (const auto& v : dirs) {
    double e = 0;
    for (std::size_t i = 0; i < d; ++i) e += std::abs(v[i] - rep.limit[i]);
    rep.errors.push_back(e);
  }
  std::size_t N = dirs.size();
  double gpow = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    gpow *= rep.gamma;
    double e = rep.errors[n - 1];
    if (n <= N / 4) {
      if (gpow > 0) rep.C = std::max(rep.C, e / gpow);
    } else if (n <= 3 * N / 4) {
      if (e > rep.C * gpow + 1e-13) rep.rate_ok = false;
    }
  }
  return rep;
}

// A_i = beta_i B_i with alternating rank-one B_i: the normalized product
// keeps the column direction (1/2, 1/2) while the column weights alternate.
struct AlternatingReport {
  std::vector<std::vector<double>> column_direction;  // per n, column 1 direction
  std::vector<std::vector<double>> weights;           // per n, alpha_i / sum alpha
};

inline AlternatingReport alternating_b_example(std::size_t n, const std::vector<rational>& betas = {}) {
  ExactMatrix odd = exact_from_ints({{1, 1}, {1, 1}}), even = exact_from_ints({{1, 2}, {1, 2}});
  for (std::size_t i = 0; i < 4; ++i) {
    odd[i] /= 2;
    even[i] /= 3;
  }
  AlternatingReport rep;
  ExactMatrix P = ExactMatrix::identity(2);
  for (std::size_t i = 1; i <= n; ++i) {
    rational b = betas.empty() ? rational(static_cast<long>(i % 3 + 1)) : betas[(i - 1) % betas.size()];
    ExactMatrix a = (i % 2 == 1) ? odd : even;
    for (std::size_t t = 0; t < 4; ++t) a[t] *= b;
    P = product(P, a);
    ExactMatrix c = normalized(P.col(0));
    rep.column_direction.push_back({c[0].get_d(), c[1].get_d()});
    rational n0 = column_norm(P, 0), n1 = column_norm(P, 1);
    rep.weights.push_back({rational(n0 / (n0 + n1)).get_d(), rational(n1 / (n0 + n1)).get_d()});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Top Lyapunov direction maps

struct RademacherReport {
  double p_series = 0;
  double p_matrix = 0;
  double gap = 0;
};

// p(omega) = (beta - 1) sum omega_n / beta^n against the first coordinate of
// A(omega_1 ... omega_n) U normalized.
inline RademacherReport lyap_direction_rademacher(std::string_view omega, double beta) {
  if (!(beta > 1 && beta <= 2)) throw std::invalid_argument("lyap_direction_rademacher: need 1 < beta <= 2");
  RademacherReport rep;
  double ib = 1 / beta, pw = 1;
  for (char c : omega) {
    if (c != '0' && c != '1') throw std::invalid_argument("lyap_direction_rademacher: digits must be 0 or 1");
    pw *= ib;
    if (c == '1') rep.p_series += (beta - 1) * pw;
  }
  // Apply the matrices to U from the right end inwards.
  double v0 = 1, v1 = 1;
  for (auto it = omega.rbegin(); it != omega.rend(); ++it) {
    double w0, w1;
    if (*it == '0') {
      w0 = ib * v0;
      w1 = (1 - ib) * v0 + v1;
    } else {
      w0 = v0 + (1 - ib) * v1;
      w1 = ib * v1;
    }
    double s = w0 + w1;
    v0 = w0 / s;
    v1 = w1 / s;
  }
  rep.p_matrix = v0 / (v0 + v1);
  rep.gap = std::abs(rep.p_series - rep.p_matrix);
  return rep;
}

struct MonotoneCheck {
  bool monotone = true;
  std::string lower, upper;  // first pair with p(lower) > p(upper)
};

// Compares p on consecutive words of the given length in lexicographic order
// (each word extended by 0s).
inline MonotoneCheck rademacher_monotone_check(double beta, std::size_t depth) {
  if (depth == 0 || depth > 20) throw std::invalid_argument("rademacher_monotone_check: 1 <= depth <= 20");
  MonotoneCheck out;
  std::string prev;
  double prev_p = -1;
  for (std::size_t idx = 0; idx < (std::size_t(1) << depth); ++idx) {
    std::string w(depth, '0');
    for (std::size_t t = 0; t < depth; ++t)
      if (idx >> (depth - 1 - t) & 1) w[t] = '1';
    double p = lyap_direction_rademacher(w, beta).p_series;
    if (!prev.empty() && p < prev_p - 1e-15 && out.monotone) {
      out.monotone = false;
      out.lower = prev;
      out.upper = w;
    }
    prev = w;
    prev_p = p;
  }
  return out;
}

struct ContinuedFractionReport {
  std::vector<std::size_t> runs;   // a_0, a_1, ... (omega = 1^{a_0} 0^{a_1} 1^{a_2} ...)
  rational p_cf;                   // [[1, a_0, ..., a_n]] truncated
  rational p_matrix;               // first coordinate of A(omega) U normalized
  bool matrix_identity = false;    // product of [[a,1],[1,0]] blocks equals A(omega)
  bool boundary = false;           // fewer than two runs: constant tail
  double gap = 0;
};

inline ContinuedFractionReport lyap_direction_cf(std::string_view omega) {
  if (omega.empty()) throw std::invalid_argument("lyap_direction_cf: empty prefix");
  ContinuedFractionReport rep;
  char want = '1';
  std::size_t i = 0;
  while (i < omega.size()) {
    std::size_t run = 0;
    while (i < omega.size() && omega[i] == want) {
      ++run;
      ++i;
    }
    if (i < omega.size() && omega[i] != '0' && omega[i] != '1')
      throw std::invalid_argument("lyap_direction_cf: digits must be 0 or 1");
    rep.runs.push_back(run);
    want = want == '1' ? '0' : '1';
  }
  std::size_t nonzero_runs = 0;
  for (auto a : rep.runs) nonzero_runs += a > 0;
  rep.boundary = nonzero_runs < 2;
  ExactMatrix A0 = exact_from_ints({{1, 0}, {1, 1}}), A1 = exact_from_ints({{1, 1}, {0, 1}});
  ExactMatrix direct = ExactMatrix::identity(2);
  for (char c : omega) direct = product(direct, c == '0' ? A0 : A1);
  ExactMatrix blocks = ExactMatrix::identity(2);
  for (auto a : rep.runs) {
    ExactMatrix m(2, 2);
    m(0, 0) = static_cast<long>(a);
    m(0, 1) = 1;
    m(1, 0) = 1;
    blocks = product(blocks, m);
  }
  bool ends_in_one = rep.runs.size() % 2 == 1;
  if (ends_in_one) blocks = product(blocks, exact_from_ints({{0, 1}, {1, 0}}));
  rep.matrix_identity = blocks == direct;
  ExactMatrix v = normalized(product(direct, exact_from_ints({{1}, {1}})));
  rep.p_matrix = v[0];
  // [[1, a_0, ..., a_n]] evaluated from the innermost term outwards.
  rational x(0);
  bool infinite_tail = false;
  for (auto it = rep.runs.rbegin(); it != rep.runs.rend(); ++it) {
    rational t = rational(static_cast<long>(*it)) + (infinite_tail ? rational(0) : x);
    if (sgn(t) == 0) {
      infinite_tail = true;
      x = 0;
      continue;
    }
    x = 1 / t;
    infinite_tail = false;
  }
  rep.p_cf = infinite_tail ? rational(0) : 1 / (1 + x);
  rep.gap = std::abs(rep.p_cf.get_d() - rep.p_matrix.get_d());
  return rep;
}

// ---------------------------------------------------------------------------
// Three growth rates, three directions

struct ThreeRatesStep {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  long phi = 0;
  bool closed_form_match = false;
  rational norm_u1, norm_u2, norm_u3, norm_u4;
  double log11_u1 = 0;
  double log2_u3 = 0;
};

struct ThreeRatesReport {
  std::vector<ThreeRatesStep> steps;
  bool closed_form_ok = true;
  bool phi_is_r = true;           // phi(n) formula equals r
  bool log2_u3_equals_phi = true; // literal log_2 |P_n U_3| = phi(n)
  bool u3_identity = true;        // |P_n U_3| = 2^{phi(n)+2} - 2
  bool u4_constant = true;        // |P_n U_4| = 2
  std::optional<std::size_t> first_log2_mismatch;
};

inline const ExactMatrix& three_rates_R() {
  static const ExactMatrix m = exact_from_ints({{2, 1, 1, 1}, {1, 2, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  return m;
}
inline const ExactMatrix& three_rates_S() {
  static const ExactMatrix m = exact_from_ints({{11, 0, 0, 0}, {7, 4, 0, 0}, {7, 4, 0, 0}, {7, 2, 1, 1}});
  return m;
}
inline const ExactMatrix& three_rates_T() {
  static const ExactMatrix m = exact_from_ints({{11, 0, 0, 0}, {7, 4, 0, 0}, {7, 2, 2, 0}, {7, 2, 1, 1}});
  return m;
}

// R S T S T^2 S T^3 S ...: the first n letters.
inline MatrixSequence three_rates_sequence(std::size_t n) {
  MatrixSequence seq;
  if (n == 0) return seq;
  seq.push_back(three_rates_R());
  for (std::size_t k = 1; seq.size() < n; ++k) {
    for (std::size_t t = 1; t < k && seq.size() < n; ++t) seq.push_back(three_rates_T());
    if (seq.size() < n) seq.push_back(three_rates_S());
  }
  return seq;
}

// n = n_k + r with n_0 = 1, n_k = n_{k-1} + k and 0 <= r <= k.
inline std::pair<std::size_t, std::size_t> three_rates_kr(std::size_t n) {
  if (n == 0) throw std::invalid_argument("three_rates_kr: n >= 1");
  std::size_t k = 0, nk = 1;
  while (nk + k + 1 <= n) {
    ++k;
    nk += k;
  }
  return {k, n - nk};
}

// phi(n) = n - (1 + floor((sqrt(8n-7)-1)/2) floor((sqrt(8n-7)+1)/2) / 2).
inline long three_rates_phi(std::size_t n) {
  if (n == 0) throw std::invalid_argument("three_rates_phi: n >= 1");
  mpz_class m = sqrt(mpz_class(static_cast<unsigned long>(8 * n - 7)));
  mpz_class lo, hi;
  mpz_fdiv_q_ui(lo.get_mpz_t(), mpz_class(m - 1).get_mpz_t(), 2);
  mpz_fdiv_q_ui(hi.get_mpz_t(), mpz_class(m + 1).get_mpz_t(), 2);
  mpz_class prod = lo * hi;
  if (prod % 2 != 0) throw std::logic_error("three_rates_phi: odd product");
  return static_cast<long>(n) - 1 - static_cast<long>(mpz_class(prod / 2).get_si());
}

inline ExactMatrix three_rates_closed_form(std::size_t n) {
  auto [k, r] = three_rates_kr(n);
  (void)k;
  mpz_class p11 = 1, p4 = 1;
  for (std::size_t t = 1; t < n; ++t) {
    p11 *= 11;
    p4 *= 4;
  }
  mpz_class two_r1 = mpz_class(1) << (r + 1);
  ExactMatrix m(4, 4);
  m(0, 0) = rational(5 * p11 - 3 * p4);
  m(0, 1) = rational(3 * p4 - two_r1);
  m(0, 2) = rational(two_r1 - 1);
  m(0, 3) = 1;
  m(1, 0) = rational(5 * p11 - 4 * p4);
  m(1, 1) = rational(4 * p4 - two_r1);
  m(1, 2) = rational(two_r1 - 1);
  m(1, 3) = 1;
  return m;
}

inline ThreeRatesReport three_rates_run(std::size_t N) {
  ThreeRatesReport rep;
  auto seq = three_rates_sequence(N);
  ExactMatrix P = ExactMatrix::identity(4);
  for (std::size_t n = 1; n <= N; ++n) {
    P = product(P, seq[n - 1]);
    ThreeRatesStep st;
    st.n = n;
    std::tie(st.k, st.r) = three_rates_kr(n);
    st.phi = three_rates_phi(n);
    st.closed_form_match = P == three_rates_closed_form(n);
    st.norm_u1 = column_norm(P, 0);
    st.norm_u2 = column_norm(P, 1);
    st.norm_u3 = column_norm(P, 2);
    st.norm_u4 = column_norm(P, 3);
    st.log11_u1 = log_of(st.norm_u1) / std::log(11.0);
    st.log2_u3 = log_of(st.norm_u3) / std::log(2.0);
    rep.closed_form_ok = rep.closed_form_ok && st.closed_form_match;
    rep.phi_is_r = rep.phi_is_r && st.phi == static_cast<long>(st.r);
    mpz_class pw = mpz_class(1) << static_cast<unsigned long>(st.phi);
    bool exact_pow = st.norm_u3 == rational(pw);
    if (!exact_pow && !rep.first_log2_mismatch) rep.first_log2_mismatch = n;
    rep.log2_u3_equals_phi = rep.log2_u3_equals_phi && exact_pow;
    rep.u3_identity = rep.u3_identity && st.norm_u3 == rational(4 * pw - 2);
    rep.u4_constant = rep.u4_constant && st.norm_u4 == 2;
    rep.steps.push_back(std::move(st));
  }
  return rep;
}

struct ThreeRatesDominance {
  DominanceReport report;
  ConditionCWitness witness;
  bool partition_ok = true;   // J = {1}, {2}, {3,4} at every n
  bool directions_ok = true;  // delta(P_n U_j, V_h) <= C r^{k(n)} for the exact V_1, V_2
  double max_log_gap_excess = -std::numeric_limits<double>::infinity();
  bool V3_equals_V1 = false;
};

// Dominance diagnostics with every index a cut; lambda = 10/11, Lambda = 5.
inline ThreeRatesDominance three_rates_dominance(std::size_t N) {
  if (N < 3) throw std::invalid_argument("three_rates_dominance: N >= 3");
  ThreeRatesDominance out;
  auto seq = three_rates_sequence(N + 1);
  auto cuts = CutSequence::every_step(N + 1);
  rational lambda(10, 11), Lambda(5);
  out.witness = check_condition_c(seq, cuts, lambda, Lambda, N, false);
  out.report = dominance_diagnostics(seq, cuts, lambda, Lambda, N);
  const auto& rep = out.report;
  if (rep.H == 3) out.V3_equals_V1 = proj_distance_float(rep.V[0], rep.V[2]) < 1e-12;
  std::vector<IndexSet> expect{{0}, {1}, {2, 3}};
  ExactMatrix V1 = exact_from_ints({{1}, {1}, {0}, {0}}), V2 = exact_from_ints({{3}, {4}, {0}, {0}});
  ExactMatrix P = ExactMatrix::identity(4);
  std::size_t first = rep.steps.empty() ? 1 : rep.steps.front().n;
  for (std::size_t n = 1; n <= N; ++n) {
    P = product(P, seq[n - 1]);
    if (n < first) continue;
    const auto& st = rep.steps[n - first];
    if (rep.H != 3 || st.J != expect) out.partition_ok = false;
    if (st.k == 0) continue;
    const std::pair<std::size_t, const ExactMatrix*> checks[] = {{0, &V1}, {1, &V2}, {2, &V1}, {3, &V1}};
    for (const auto& [j, V] : checks) {
      auto dist = proj_distance(P.col(j), *V);
      if (!dist.finite) {
        out.directions_ok = false;
        continue;
      }
      double lv = dist.value();
      if (lv <= 0) continue;
      double excess = std::log(lv) - st.log_rate;
      out.max_log_gap_excess = std::max(out.max_log_gap_excess, excess);
      if (excess > 1e-12) out.directions_ok = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank-one approximants without projective convergence

struct RotatingCheckpoint {
  std::size_t k = 0;
  std::size_t n = 0;
  bool is_m = false;     // m_k checkpoint (after B) rather than n_k (after D)
  ExactMatrix normalized_P;  // P_n / (sum of entries)
  double gap_to_limit = 0;   // entrywise l1 distance to the displayed limit
  double sigma_ratio = 0;
};

struct RotatingReport {
  std::vector<RotatingCheckpoint> checkpoints;
  double max_sigma_ratio_tail = 0;  // over every n past the first checkpoint pair
};

inline const std::array<ExactMatrix, 4>& rotating_matrices() {
  static const std::array<ExactMatrix, 4> m{
      exact_from_ints({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), exact_from_ints({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}),
      exact_from_ints({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}), exact_from_ints({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})};
  return m;
}

// Runs A^{2^0} B C^{2^1} D A^{2^2} B ... through kmax groups of four blocks.
inline RotatingReport rotating_products(std::size_t kmax) {
  if (kmax == 0 || kmax > 12) throw std::invalid_argument("rotating_products: 1 <= kmax <= 12");
  const auto& M = rotating_matrices();
  ExactMatrix lim_n = exact_from_ints({{0, 1, 0}, {0, 0, 0}, {0, 2, 0}});
  ExactMatrix lim_m = exact_from_ints({{2, 0, 0}, {0, 0, 0}, {1, 0, 0}});
  for (std::size_t i = 0; i < 9; ++i) {
    lim_n[i] /= 3;
    lim_m[i] /= 3;
  }
  auto power = [](std::size_t which, const mpz_class& e) {
    // A^e = [[1,e,0],[0,1,0],[0,0,1]], C^e = [[1,0,0],[e,1,0],[0,0,1]]
    ExactMatrix m = ExactMatrix::identity(3);
    if (which == 0) m(0, 1) = rational(e);
    else m(1, 0) = rational(e);
    return m;
  };
  auto sum_norm = [](const ExactMatrix& p) {
    rational s(0);
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i];
    ExactMatrix out = p;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] /= s;
    return out;
  };
  auto l1 = [](const ExactMatrix& a, const ExactMatrix& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i].get_d() - b[i].get_d());
    return s;
  };
  RotatingReport rep;
  ExactMatrix P = ExactMatrix::identity(3);
  mpz_class n = 0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    // A^{2^{2k}} B: ends at m_k
    P = product(P, power(0, mpz_class(1) << (2 * k)));
    P = product(P, M[1]);
    n += (mpz_class(1) << (2 * k)) + 1;
    if (k >= 1) {
      RotatingCheckpoint c{k, static_cast<std::size_t>(n.get_ui()), true, sum_norm(P), 0, 0};
      c.gap_to_limit = l1(c.normalized_P, lim_m);
      c.sigma_ratio = singular_gap(to_float(c.normalized_P)).ratio;
      rep.max_sigma_ratio_tail = k >= 2 ? std::max(rep.max_sigma_ratio_tail, c.sigma_ratio) : rep.max_sigma_ratio_tail;
      rep.checkpoints.push_back(std::move(c));
    }
    if (k == kmax) break;
    // C^{2^{2k+1}} D: ends at n_{k+1}
    P = product(P, power(2, mpz_class(1) << (2 * k + 1)));
    P = product(P, M[3]);
    n += (mpz_class(1) << (2 * k + 1)) + 1;
    RotatingCheckpoint c{k + 1, static_cast<std::size_t>(n.get_ui()), false, sum_norm(P), 0, 0};
    c.gap_to_limit = l1(c.normalized_P, lim_n);
    c.sigma_ratio = singular_gap(to_float(c.normalized_P)).ratio;
    if (k + 1 >= 2) rep.max_sigma_ratio_tail = std::max(rep.max_sigma_ratio_tail, c.sigma_ratio);
    rep.checkpoints.push_back(std::move(c));
  }
  return rep;
}

// n_k and m_k from their sums of powers of two.
inline std::size_t rotating_n(std::size_t k) { return ((std::size_t(1) << (2 * k)) - 1) + 2 * k; }
inline std::size_t rotating_m(std::size_t k) { return ((std::size_t(1) << (2 * k + 1)) - 1) + 2 * k + 1; }

// Letter-by-letter product, used to cross-check the block powers.
inline ExactMatrix rotating_prefix(std::size_t n) {
  const auto& M = rotating_matrices();
  ExactMatrix P = ExactMatrix::identity(3);
  std::size_t used = 0;
  for (std::size_t j = 0; used < n; ++j) {
    std::size_t base = (j % 2 == 0) ? 0 : 2;
    std::size_t sep = (j % 2 == 0) ? 1 : 3;
    for (std::size_t t = 0; t < (std::size_t(1) << j) && used < n; ++t, ++used) P = product(P, M[base]);
    if (used < n) {
      P = product(P, M[sep]);
      ++used;
    }
  }
  return P;
}

}  // namespace mpl

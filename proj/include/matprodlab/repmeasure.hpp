#pragma once

#include "family.hpp"
#include "hclass.hpp"
#include "matrix.hpp"
#include "projective.hpp"
#include "spectral.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

// mu(w) = L* A(w) R with A_* R = R, L* R = 1 and ||R|| = 1.
class LinearRepresentation {
 public:
  LinearRepresentation(Family family, ExactMatrix R, ExactMatrix L)
      : family_(std::move(family)), R_(std::move(R)), L_(std::move(L)) {
    if (family_.empty()) throw std::invalid_argument("representation needs at least one matrix");
    std::size_t d = family_.front().rows();
    for (const auto& a : family_) {
      if (a.rows() != d || a.cols() != d) throw std::invalid_argument("matrices must be square of equal size");
      if (!a.is_nonnegative()) throw std::invalid_argument("matrices must be nonnegative");
    }
    if (R_.rows() != d || R_.cols() != 1) throw std::invalid_argument("R must be a column vector of size d");
    if (L_.rows() != d || L_.cols() != 1) throw std::invalid_argument("L must be a column vector of size d");
    if (!R_.is_nonnegative() || norm1(R_) != 1) throw std::invalid_argument("R must be a probability vector");
    if (!L_.is_nonnegative()) throw std::invalid_argument("L must be nonnegative");
    ExactMatrix star(d, d);
    for (const auto& a : family_) star += a;
    if (product(star, R_) != R_) throw std::invalid_argument("A_* R != R");
    if (product(L_.transpose(), R_)[0] != 1) throw std::invalid_argument("L* R != 1");
  }

  const Family& family() const { return family_; }
  const ExactMatrix& R() const { return R_; }
  const ExactMatrix& L() const { return L_; }
  std::size_t alphabet() const { return family_.size(); }
  std::size_t dim() const { return R_.rows(); }

 private:
  Family family_;
  ExactMatrix R_;
  ExactMatrix L_;
};

inline rational measure_cylinder(const LinearRepresentation& rep, const std::string& w) {
  ExactMatrix row = rep.L().transpose();
  for (char c : w) row = product(row, rep.family()[digit_of(c, rep.alphabet())]);
  return product(row, rep.R())[0];
}

// Pi_n(w, R) = A(w) R / ||A(w) R||.
inline ExactMatrix pi_n(const Family& fam, const std::string& w, const ExactMatrix& R) {
  ExactMatrix v = R;
  for (std::size_t k = w.size(); k-- > 0;) v = product(fam[digit_of(w[k], fam.size())], v);
  if (v.is_zero_matrix()) throw std::domain_error("A(w) R = 0: the word leaves Omega_R");
  return normalized(v);
}

// Every prefix of w keeps A(prefix) R nonzero.
inline bool omega_R_member(const Family& fam, const ExactMatrix& R, const std::string& w) {
  ExactMatrix row = ExactMatrix::identity(R.rows());
  for (char c : w) {
    row = product(row, fam[digit_of(c, fam.size())]);
    if (product(row, R).is_zero_matrix()) return false;
  }
  return true;
}

struct Potential {
  rational ratio;
  double value = 0;
};

// phi_n(w) = log(mu[w_1..w_n] / mu[w_2..w_n]) on the prefix of length n.
inline Potential n_step_potential(const LinearRepresentation& rep, const std::string& w, std::size_t n) {
  if (n == 0 || n > w.size()) throw std::invalid_argument("n_step_potential needs 1 <= n <= |w|");
  rational num = measure_cylinder(rep, w.substr(0, n));
  rational den = measure_cylinder(rep, w.substr(1, n - 1));
  if (is_zero(num) || is_zero(den)) throw std::domain_error("cylinder of zero measure");
  Potential p{num / den, 0};
  p.value = log_of(p.ratio);
  return p;
}

struct GibbsConstants {
  std::size_t depth = 0;
  std::vector<double> sup_gap;    // depth-D lower estimate of ||phi - phi_k||, k = 1..N
  std::vector<double> log_K_over_n;
};

// K_n = exp(sum_{k <= n} ||phi - phi_k||) with the sup estimated over depth-D
// cylinder representatives padded to length N with `pad`.
inline GibbsConstants gibbs_constants(const LinearRepresentation& rep, const std::function<double(const std::string&)>& phi,
                                      std::size_t N, std::size_t D, char pad) {
  GibbsConstants out;
  out.depth = D;
  out.sup_gap.assign(N, 0.0);
  std::size_t d = rep.dim(), a = rep.alphabet();
  std::vector<FloatMatrix> fam;
  for (const auto& m : rep.family()) fam.push_back(to_float(m));
  FloatMatrix R = to_float(rep.R()), L = to_float(rep.L());
  auto step = [&](std::vector<double>& x, double& logscale, std::size_t e) {
    std::vector<double> y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      if (x[i] != 0)
        for (std::size_t j = 0; j < d; ++j) y[j] += x[i] * fam[e](i, j);
    double s = 0;
    for (double v : y) s += v;
    if (s > 0) {
      for (double& v : y) v /= s;
      logscale += std::log(s);
    }
    x.swap(y);
  };
  auto dot_r = [&](const std::vector<double>& x) {
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += x[i] * R[i];
    return s;
  };
  for (const auto& w : all_words(a, D)) {
    std::string rep_word = w;
    if (rep_word.size() < N) rep_word += std::string(N - rep_word.size(), pad);
    double target = phi(rep_word);
    std::vector<double> x(d), y(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i] = L[i];
    double lx = 0, ly = 0;
    for (std::size_t k = 1; k <= N; ++k) {
      step(x, lx, digit_of(rep_word[k - 1], a));
      if (k >= 2) step(y, ly, digit_of(rep_word[k - 1], a));
      double phik = (lx + std::log(dot_r(x))) - (ly + std::log(dot_r(y)));
      out.sup_gap[k - 1] = std::max(out.sup_gap[k - 1], std::abs(target - phik));
    }
  }
  double acc = 0;
  for (std::size_t k = 0; k < N; ++k) {
    acc += out.sup_gap[k];
    out.log_K_over_n.push_back(acc / static_cast<double>(k + 1));
  }
  return out;
}

// max ||Pi_{n+t}(xi, R) - Pi_n(prefix, R)|| over extensions xi of length t <= r.
inline double cauchy_uniform_scan(const Family& fam, const ExactMatrix& R, const std::string& prefix, std::size_t r) {
  ExactMatrix base = pi_n(fam, prefix, R);
  double best = 0;
  for (std::size_t t = 1; t <= r; ++t)
    for (const auto& e : all_words(fam.size(), t)) {
      ExactMatrix v;
      try {
        v = pi_n(fam, prefix + e, R);
      } catch (const std::domain_error&) {
        continue;
      }
      best = std::max(best, norm1(v - base).get_d());
    }
  return best;
}

// Best rational approximation with denominator at most qmax.
inline rational snap_rational(double x, long qmax = 10000) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int it = 0; it < 64; ++it) {
    double f = std::floor(y);
    long a = static_cast<long>(f);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (y - f < 1e-15) break;
    y = 1.0 / (y - f);
  }
  return rational(p1, q1);
}

struct PowerLimit {
  bool converged = false;     // successive normalized powers stabilized
  bool rank_one = false;      // and the limit has sigma2/sigma1 below tol
  std::size_t squarings = 0;  // n = 2^squarings at detection
  double sigma_ratio = 1;
  FloatMatrix limit;
  std::vector<double> C, D;  // limit ~ C D*, ||C|| = 1
  bool exact = false;        // snapped C, D are exact eigenvectors with a common eigenvalue
  ExactMatrix C_exact, D_exact;
  rational eigenvalue;
};

// Normalized powers A^(2^k) / ||A^(2^k)|| by repeated squaring in floating
// point. The factorization C D* is produced only for rank-one limits.
inline PowerLimit power_limit(const ExactMatrix& a, double tol = 1e-10, std::size_t max_squarings = 60) {
  if (a.is_zero_matrix()) throw std::domain_error("power_limit of the zero matrix");
  if (a.rows() != a.cols()) throw std::invalid_argument("power_limit needs a square matrix");
  std::size_t d = a.rows();
  PowerLimit out;
  FloatMatrix n = to_float(normalized(a));
  for (std::size_t k = 1; k <= max_squarings; ++k) {
    FloatMatrix next = product(n, n);
    double s = norm1(next);
    if (s == 0) return out;
    next /= s;
    double diff = norm1(next - n);
    n = next;
    out.squarings = k;
    out.sigma_ratio = singular_gap(n).ratio;
    FloatMatrix shifted = product(to_float(a), n);
    double ss = norm1(shifted);
    // Stability along the squares alone would accept periodic powers.
    bool step_stable = ss > 0 && norm1(shifted / ss - n) < std::sqrt(tol);
    if (diff < tol && step_stable) {
      out.converged = true;
      out.rank_one = out.sigma_ratio < tol;
      break;
    }
  }
  out.limit = n;
  if (!out.rank_one) return out;
  out.C.assign(d, 0.0);
  out.D.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      out.C[i] += n(i, j);
      out.D[j] += n(i, j);
    }
  // n = C D* with ||C|| = 1 and ||n|| = 1 forces D* U = 1: D = U* n.
  double cs = 0;
  for (double x : out.C) cs += x;
  for (double& x : out.C) x /= cs;
  std::vector<rational> ce, de;
  for (double x : out.C) ce.push_back(snap_rational(x));
  for (double x : out.D) de.push_back(snap_rational(x));
  ExactMatrix C = ExactMatrix::column(ce), D = ExactMatrix::column(de);
  if (!C.is_zero_matrix() && !D.is_zero_matrix() && norm1(C) == 1) {
    ExactMatrix ac = product(a, C);
    rational rho = norm1(ac);
    ExactMatrix da = product(D.transpose(), a);
    if (sgn(rho) > 0 && ac == C * rho && da == D.transpose() * rho) {
      out.exact = true;
      out.C_exact = C;
      out.D_exact = D;
      out.eigenvalue = rho;
    }
  }
  return out;
}

enum class PointwiseRoute { S1, S2, INCONCLUSIVE };

inline const char* to_string(PointwiseRoute r) {
  switch (r) {
    case PointwiseRoute::S1:
      return "S1";
    case PointwiseRoute::S2:
      return "S2";
    default:
      return "inconclusive";
  }
}

struct PointwiseReport {
  PointwiseRoute route = PointwiseRoute::INCONCLUSIVE;
  std::string detail;
};

// Support stabilization: Delta(A(w_{psi(n), n+r}) R) = Delta(A(w_{psi(n), n}) R)
// for n0 <= n <= n + r <= |w|.
inline bool support_stabilizes(const Family& fam, const ExactMatrix& R, const std::string& w, std::size_t n0,
                               const std::function<std::size_t(std::size_t)>& psi) {
  for (std::size_t n = n0; n <= w.size(); ++n) {
    std::size_t p = psi(n);
    if (p > n) throw std::invalid_argument("psi(n) must not exceed n");
    SupportPattern ref = support_pattern(product(word_product(fam, w.substr(p, n - p)), R));
    for (std::size_t m = n + 1; m <= w.size(); ++m)
      if (support_pattern(product(word_product(fam, w.substr(p, m - p)), R)) != ref) return false;
  }
  return true;
}

// omega = prefix followed by the constant tail s (when given), else the
// finite prefix itself tested for support stabilization.
inline PointwiseReport check_pointwise_conditions(const Family& fam, const ExactMatrix& R, const std::string& prefix,
                                                  std::optional<char> tail, std::size_t horizon,
                                                  const std::function<std::size_t(std::size_t)>& psi) {
  PointwiseReport rep;
  if (tail) {
    PowerLimit pl = power_limit(fam.at(digit_of(*tail, fam.size())));
    if (pl.converged) {
      FloatMatrix v = product(to_float(word_product(fam, prefix)), product(pl.limit, to_float(R)));
      if (norm1(v) > 1e-12) {
        rep.route = PointwiseRoute::S2;
        rep.detail = "normalized powers converge (n = 2^" + std::to_string(pl.squarings) + ") and A(w) B_s R != 0";
        return rep;
      }
    }
    rep.detail = "power limit not detected or A(w) B_s R = 0";
    return rep;
  }
  std::string w = prefix.substr(0, std::min(prefix.size(), horizon));
  if (support_stabilizes(fam, R, w, 1, psi)) {
    rep.route = PointwiseRoute::S1;
    rep.detail = "supports stabilize up to horizon " + std::to_string(w.size());
  } else {
    rep.detail = "support stabilization fails within the horizon";
  }
  return rep;
}

struct UniformReport {
  bool U1_1 = true;  // A(xi_{psi(n), n+r}) R in H2(Lambda)
  bool U1_2 = true;  // supports equal
  std::size_t extensions = 0;
  std::string witness;
  bool ok() const { return U1_1 && U1_2; }
};

// Exhaustive (U1) check for all xi extending w_1..w_n up to total length N.
inline UniformReport check_uniform_conditions(const Family& fam, const ExactMatrix& R, const std::string& prefix,
                                              std::size_t psi_n, const rational& Lambda, std::size_t N) {
  UniformReport rep;
  std::size_t n = prefix.size();
  if (psi_n > n) throw std::invalid_argument("psi(n) must not exceed n");
  ExactMatrix ref = product(word_product(fam, prefix.substr(psi_n)), R);
  if (ref.is_zero_matrix()) throw std::domain_error("prefix leaves Omega_R");
  SupportPattern ref_support = support_pattern(ref);
  for (std::size_t t = 0; n + t <= N; ++t)
    for (const auto& e : all_words(fam.size(), t)) {
      ExactMatrix v = product(word_product(fam, prefix.substr(psi_n) + e), R);
      if (v.is_zero_matrix()) continue;
      ++rep.extensions;
      if (vector_Lambda(v) > Lambda && rep.U1_1) {
        rep.U1_1 = false;
        if (rep.witness.empty()) rep.witness = prefix + e + " (U1.1)";
      }
      if (support_pattern(v) != ref_support && rep.U1_2) {
        rep.U1_2 = false;
        if (rep.witness.empty()) rep.witness = prefix + e + " (U1.2)";
      }
    }
  return rep;
}

}  // namespace mpl

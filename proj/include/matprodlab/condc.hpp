#pragma once

#include "hclass.hpp"
#include "matrix.hpp"
#include "projective.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpl {

// Finite prefix 0 = s_0 = s_1 < s_2 < ... of a cut sequence.
class CutSequence {
 public:
  CutSequence() : s_{0, 0} {}
  explicit CutSequence(std::vector<std::size_t> cuts) : s_(std::move(cuts)) {
    if (s_.size() < 2 || s_[0] != 0 || s_[1] != 0) throw std::invalid_argument("cuts must start with s0 = s1 = 0");
    for (std::size_t k = 2; k < s_.size(); ++k)
      if (s_[k] <= s_[k - 1]) throw std::invalid_argument("cuts must be strictly increasing from s1 on");
  }
  // s = (0, 0, 1, 2, ..., last): every index is a cut.
  static CutSequence every_step(std::size_t last) {
    std::vector<std::size_t> c{0, 0};
    for (std::size_t n = 1; n <= last; ++n) c.push_back(n);
    return CutSequence(std::move(c));
  }

  const std::vector<std::size_t>& cuts() const { return s_; }
  std::size_t operator[](std::size_t k) const { return s_.at(k); }
  std::size_t size() const { return s_.size(); }
  std::size_t last() const { return s_.back(); }

  // k(n) with s_{k+1} <= n < s_{k+2}; requires n < last cut.
  std::size_t k_of(std::size_t n) const {
    if (n >= s_.back()) throw std::out_of_range("k_of: n beyond the stored cuts");
    std::size_t k = 0;
    while (k + 2 < s_.size() && s_[k + 2] <= n) ++k;
    return k;
  }

 private:
  std::vector<std::size_t> s_;
};

using MatrixSequence = std::vector<ExactMatrix>;  // element 0 is A_1

inline std::size_t sequence_dim(const MatrixSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("empty matrix sequence");
  return seq.front().rows();
}

// Q_n = A_{s_k + 1} ... A_n with k = k(n); Q_0 is the identity.
inline ExactMatrix q_block(const MatrixSequence& seq, const CutSequence& cuts, std::size_t n) {
  if (n > seq.size()) throw std::out_of_range("q_block: n beyond the available sequence");
  std::size_t d = sequence_dim(seq);
  if (n == 0) return ExactMatrix::identity(d);
  std::size_t k = cuts.k_of(n);
  ExactMatrix q = ExactMatrix::identity(d);
  for (std::size_t t = cuts[k] + 1; t <= n; ++t) q = product(q, seq[t - 1]);
  return q;
}

inline ExactMatrix p_product(const MatrixSequence& seq, std::size_t n) {
  std::size_t d = sequence_dim(seq);
  ExactMatrix p = ExactMatrix::identity(d);
  for (std::size_t t = 1; t <= n; ++t) p = product(p, seq.at(t - 1));
  return p;
}

// Subsampled cuts S_k = s_{gamma(k)} with gamma(0) = 1, gamma(k+1) = gamma(k) + k.
inline CutSequence reinforce_cuts(const CutSequence& cuts) {
  std::vector<std::size_t> out;
  std::size_t g = 1;
  for (std::size_t k = 0; g < cuts.size(); ++k) {
    out.push_back(cuts[g]);
    g += k;
  }
  if (out.size() < 2) out = {0, 0};
  return CutSequence(out);
}

// Incremental generator of (P_n, Q_n) pairs; Q_n = B_k T_n where B_k is the
// last complete block product and T_n the partial product since s_{k+1}.
class BlockWalker {
 public:
  BlockWalker(const MatrixSequence& seq, const CutSequence& cuts)
      : seq_(seq), cuts_(cuts), d_(sequence_dim(seq)) {
    p_ = ExactMatrix::identity(d_);
    block_ = ExactMatrix::identity(d_);
    tail_ = ExactMatrix::identity(d_);
    blocks_.push_back(block_);
  }
  // Advances to n + 1; returns false at the end of the sequence or cuts.
  bool next() {
    if (n_ >= seq_.size() || n_ + 1 >= cuts_.last()) return false;
    ++n_;
    const ExactMatrix& a = seq_[n_ - 1];
    p_ = product(p_, a);
    tail_ = product(tail_, a);
    std::size_t k = cuts_.k_of(n_);
    if (k != k_) {
      // n reached s_{k+1}: the tail is the completed block B_k.
      block_ = tail_;
      blocks_.push_back(block_);
      tail_ = ExactMatrix::identity(d_);
      k_ = k;
    }
    q_ = product(block_, tail_);
    return true;
  }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const ExactMatrix& P() const { return p_; }
  const ExactMatrix& Q() const { return q_; }
  const ExactMatrix& tail() const { return tail_; }
  // blocks()[m] = B_m = A_{s_m+1} ... A_{s_{m+1}}; blocks()[0] is the identity.
  const std::vector<ExactMatrix>& blocks() const { return blocks_; }

 private:
  const MatrixSequence& seq_;
  const CutSequence& cuts_;
  std::size_t d_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  ExactMatrix p_, q_, block_, tail_;
  std::vector<ExactMatrix> blocks_;
};

struct ConditionCStep {
  std::size_t n = 0;
  std::size_t k = 0;
  HClassProfile q;
};

struct ConditionCWitness {
  CutSequence cuts;
  rational lambda;
  rational Lambda;
  std::size_t horizon = 0;
  std::vector<ConditionCStep> per_n;
  bool ok = true;
  std::optional<std::size_t> violation_n;
  std::string violation;
  rational max_Lambda_seen{1};
  rational max_lambda_seen{0};
  // Products Q_{s_p} ... Q_{s_k} Q_n checked against Lambda / (1 - lambda).
  bool chained_ok = true;
  rational max_chained_Lambda{1};
};

// Verifies Q_n in H1, H2(Lambda), H3(lambda) for s_2 <= n <= N.
inline ConditionCWitness check_condition_c(const MatrixSequence& seq, const CutSequence& cuts, const rational& lambda,
                                           const rational& Lambda, std::size_t N, bool check_chained = true) {
  if (!(lambda >= 0 && lambda < 1 && Lambda >= 1)) throw std::invalid_argument("need 0 <= lambda < 1 <= Lambda");
  ConditionCWitness w;
  w.cuts = cuts;
  w.lambda = lambda;
  w.Lambda = Lambda;
  rational chained_bound = Lambda / (1 - lambda);
  BlockWalker walk(seq, cuts);
  std::size_t s2 = cuts.size() > 2 ? cuts[2] : cuts.last();
  while (walk.n() < N && walk.next()) {
    std::size_t n = walk.n();
    w.horizon = n;
    if (n < s2) continue;
    ConditionCStep st{n, walk.k(), profile(walk.Q())};
    w.max_Lambda_seen = rmax(w.max_Lambda_seen, st.q.Lambda_min);
    w.max_lambda_seen = rmax(w.max_lambda_seen, st.q.lambda_min);
    if (w.ok) {
      std::string what;
      if (!st.q.in_H1) what = "H1";
      else if (st.q.Lambda_min > Lambda) what = "H2(Lambda): min Lambda = " + to_string(st.q.Lambda_min);
      else if (st.q.lambda_min > lambda) what = "H3(lambda): min lambda = " + to_string(st.q.lambda_min);
      if (!what.empty()) {
        w.ok = false;
        w.violation_n = n;
        w.violation = what;
      }
    }
    if (check_chained) {
      // Suffix products B_{p-1} ... B_{k-1} Q_n for p = k down to 1.
      ExactMatrix m = walk.Q();
      const auto& blocks = walk.blocks();
      for (std::size_t p = walk.k(); p >= 1; --p) {
        if (p < walk.k()) m = product(blocks[p], m);
        if (!m.is_zero_matrix()) {
          rational L = min_Lambda(m);
          w.max_chained_Lambda = rmax(w.max_chained_Lambda, L);
          if (L > chained_bound) w.chained_ok = false;
        }
        if (p == 1) break;
      }
    }
    w.per_n.push_back(std::move(st));
  }
  return w;
}

struct ColumnBlock {
  IndexSet rows;
  IndexSet cols;
};

// Blocks I_h x J_h of a matrix in H1, rows strictly decreasing in h.
template <class T>
std::vector<ColumnBlock> column_blocks(const basic_matrix<T>& m) {
  if (!in_H1(m)) throw std::invalid_argument("column_blocks requires a matrix in H1");
  if (m.is_zero_matrix()) throw std::invalid_argument("column_blocks of the zero matrix");
  std::vector<std::pair<SupportPattern, IndexSet>> groups;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SupportPattern p = column_support(m, j);
    if (p.is_zero()) continue;
    bool placed = false;
    for (auto& g : groups)
      if (g.first == p) {
        g.second.push_back(j);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({p, {j}});
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.first.count() > b.first.count(); });
  std::vector<ColumnBlock> out;
  for (auto& g : groups) out.push_back({g.first.indices(), g.second});
  return out;
}

// Restriction of P to the h-th rectangle (h is 1-based).
template <class T>
basic_matrix<T> h_diamond(const basic_matrix<T>& p, const std::vector<ColumnBlock>& blocks, std::size_t h) {
  if (h == 0 || h > blocks.size()) throw std::out_of_range("invalid block index");
  basic_matrix<T> out(p.rows(), p.cols());
  for (auto i : blocks[h - 1].rows)
    for (auto j : blocks[h - 1].cols) out(i, j) = p(i, j);
  return out;
}

// Minimal 1-based h whose column set meets I(X).
template <class T>
std::size_t h_index(const basic_matrix<T>& x, const std::vector<ColumnBlock>& blocks) {
  for (std::size_t h = 0; h < blocks.size(); ++h)
    for (auto j : blocks[h].cols)
      if (!is_zero(x[j])) return h + 1;
  throw std::domain_error("h_index: P X = 0");
}

// Removes consecutive repetitions: (1,1,1,2,3,3,3,1,1) -> (1,2,3,1).
template <class L>
std::vector<L> xi_compress(const std::vector<L>& labels) {
  std::vector<L> out;
  for (const auto& x : labels)
    if (out.empty() || !(out.back() == x)) out.push_back(x);
  return out;
}

struct ProbeCheck {
  std::size_t probe = 0;
  std::size_t h = 0;
  double lhs = 0;
  double rhs = 0;
  bool ok = true;
};

struct DominanceStep {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<IndexSet> J;             // J_h(n), h = 1..H
  std::vector<double> gap;             // per column: delta(P_n U_j, V_h)
  std::vector<std::size_t> label;      // per column: h (0 for zero columns)
  std::vector<double> norm_ratio;      // h = 2..H: max ||P_n U_j'|| / ||P_n U_j||
  double eps_hat = 0;
  double log_rate = 0;                 // log(C r^k)
  double sigma_ratio = 0;
  bool partition_ok = true;
  bool rate_ok = true;
  bool trapping_ok = true;
  std::vector<ProbeCheck> probes;
};

struct DominanceOptions {
  double merge_tol = 1e-6;
  std::vector<ExactMatrix> probes;
  std::size_t first_n = 0;  // 0 means s_2
};

struct DominanceReport {
  std::size_t H = 0;
  std::vector<FloatMatrix> V;
  std::vector<SupportPattern> V_support;
  rational r;
  rational C;
  double log_C = 0;
  double log_r = 0;
  std::vector<std::size_t> horizon_labels;  // labels of the Q-blocks at the horizon before compression
  std::vector<DominanceStep> steps;
  bool ordering_ok = true;   // Delta(V_1) >= ... >= Delta(V_H), consecutive distinct
  bool partition_ok = true;
  bool rate_ok = true;
  bool trapping_ok = true;
  bool bound_ok = true;
  std::size_t stable_since = 0;
};

namespace detail {

inline FloatMatrix normalized_column(const ExactMatrix& p, std::size_t j) { return to_float(normalized(p.col(j))); }

inline double log_ratio_value(const ExtendedLogValue& v) { return v.value(); }

}  // namespace detail

// Dominance diagnostics along a condition-(C) witness: limit estimates at
// the horizon, per-n dominant groups, rates and the part (iii) bound.
inline DominanceReport dominance_diagnostics(const MatrixSequence& seq, const CutSequence& cuts, const rational& lambda,
                                             const rational& Lambda, std::size_t N, const DominanceOptions& opt = {}) {
  DominanceReport rep;
  std::size_t d = sequence_dim(seq);
  rep.r = rmax(lambda, Lambda / (Lambda + 1));
  rep.C = 4 * Lambda * Lambda * Lambda;
  rep.log_C = log_of(rep.C);
  rep.log_r = log_of(rep.r);
  rational chained = Lambda / (1 - lambda);
  std::size_t s2 = cuts.size() > 2 ? cuts[2] : cuts.last();
  std::size_t first = opt.first_n ? opt.first_n : std::max<std::size_t>(s2, 1);

  // Pass 1: limit estimates from the Q-blocks at the horizon.
  std::vector<ExactMatrix> Ps, Qs;
  std::vector<std::size_t> ks;
  {
    BlockWalker walk(seq, cuts);
    while (walk.n() < N && walk.next()) {
      if (walk.n() < first) continue;
      Ps.push_back(walk.P());
      Qs.push_back(walk.Q());
      ks.push_back(walk.k());
    }
  }
  if (Ps.empty()) throw std::invalid_argument("dominance_diagnostics: empty horizon");
  const ExactMatrix& PN = Ps.back();
  auto blocksN = column_blocks(Qs.back());
  std::vector<FloatMatrix> W;
  for (const auto& b : blocksN) {
    if (PN.col(b.cols.front()).is_zero_matrix()) continue;
    W.push_back(detail::normalized_column(PN, b.cols.front()));
  }
  for (std::size_t t = 0; t < W.size(); ++t) {
    if (!rep.V.empty() && proj_distance_float(rep.V.back(), W[t]) <= opt.merge_tol) {
      rep.horizon_labels.push_back(rep.V.size());
      continue;
    }
    rep.V.push_back(W[t]);
    rep.horizon_labels.push_back(rep.V.size());
  }
  rep.H = rep.V.size();
  for (const auto& v : rep.V) rep.V_support.push_back(support_pattern(v));
  for (std::size_t h = 1; h < rep.H; ++h) {
    if (!rep.V_support[h].subset_of(rep.V_support[h - 1])) rep.ordering_ok = false;
    if (proj_distance_float(rep.V[h - 1], rep.V[h]) <= opt.merge_tol) rep.ordering_ok = false;
  }

  // Pass 2: per-n groups and checks.
  std::size_t last_unstable = 0;
  for (std::size_t t = 0; t < Ps.size(); ++t) {
    const ExactMatrix& P = Ps[t];
    const ExactMatrix& Q = Qs[t];
    DominanceStep st;
    st.n = first + t;
    st.k = ks[t];
    st.log_rate = rep.log_C + static_cast<double>(st.k) * rep.log_r;
    st.J.assign(rep.H, {});
    st.label.assign(d, 0);
    st.gap.assign(d, 0.0);
    std::vector<ColumnBlock> qb;
    bool q_in_h1 = in_H1(Q) && !Q.is_zero_matrix();
    if (q_in_h1) qb = column_blocks(Q);
    else {
      // Outside the witness range: every column is its own block.
      for (std::size_t j = 0; j < d; ++j)
        if (!Q.col(j).is_zero_matrix()) qb.push_back({column_support(Q, j).indices(), {j}});
    }
    std::vector<rational> norms(d);
    for (std::size_t j = 0; j < d; ++j) norms[j] = column_norm(P, j);
    // Columns in dominance order: Q-block order, then decreasing norm.
    std::vector<std::size_t> order;
    for (const auto& b : qb) {
      IndexSet cols = b.cols;
      std::stable_sort(cols.begin(), cols.end(), [&](std::size_t a, std::size_t c) { return norms[c] < norms[a]; });
      for (auto j : cols)
        if (sgn(norms[j]) != 0) order.push_back(j);
    }
    std::size_t prev = 1;
    for (auto j : order) {
      FloatMatrix x = detail::normalized_column(P, j);
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t h = prev; h <= rep.H; ++h) {
        double dist = proj_distance_float(x, rep.V[h - 1]);
        if (dist < best_d) {
          best_d = dist;
          best = h;
        }
      }
      if (best == 0) {
        best = prev;
        st.partition_ok = false;
      }
      st.label[j] = best;
      st.gap[j] = best_d;
      st.J[best - 1].push_back(j);
      st.eps_hat = std::max(st.eps_hat, best_d);
      prev = best;
    }
    for (auto& J : st.J) std::sort(J.begin(), J.end());
    for (std::size_t h = 0; h < rep.H; ++h)
      if (st.J[h].empty()) last_unstable = st.n;
    // Dominance ratios between consecutive groups.
    for (std::size_t h = 1; h < rep.H; ++h) {
      double worst = 0;
      for (auto j : st.J[h - 1])
        for (auto j2 : st.J[h]) worst = std::max(worst, rational(norms[j2] / norms[j]).get_d());
      st.norm_ratio.push_back(worst);
    }
    // Within each Q-block: pairwise distance bounded by C r^k (k >= 1).
    if (q_in_h1 && st.k >= 1) {
      for (const auto& b : qb) {
        for (std::size_t a = 0; a < b.cols.size(); ++a)
          for (std::size_t c = a + 1; c < b.cols.size(); ++c) {
            ExactMatrix x = P.col(b.cols[a]), y = P.col(b.cols[c]);
            if (x.is_zero_matrix() || y.is_zero_matrix()) continue;
            auto dist = proj_distance(x, y);
            if (!dist.finite) {
              st.rate_ok = false;
              continue;
            }
            double lv = dist.value();
            if (lv > 0 && std::log(lv) > st.log_rate + 1e-12) st.rate_ok = false;
          }
      }
    }
    // Trapping: P_n in H2(Lambda / (1 - lambda)).
    if (st.k >= 1 && min_Lambda(P) > chained) st.trapping_ok = false;
    st.sigma_ratio = singular_gap(to_float(normalized(P))).ratio;
    // Part (iii) bound for the probe vectors.
    for (std::size_t pi = 0; pi < opt.probes.size(); ++pi) {
      const ExactMatrix& X = opt.probes[pi];
      ExactMatrix PX = product(P, X);
      ProbeCheck pc;
      pc.probe = pi;
      if (PX.is_zero_matrix()) {
        pc.ok = false;
        st.probes.push_back(pc);
        continue;
      }
      std::size_t h = 0;
      for (std::size_t hh = 1; hh <= rep.H && !h; ++hh)
        for (auto j : st.J[hh - 1])
          if (sgn(X[j]) != 0) {
            h = hh;
            break;
          }
      if (h == 0) h = 1;
      pc.h = h;
      FloatMatrix v = to_float(normalized(PX));
      double lhs = 0;
      for (std::size_t i = 0; i < d; ++i) lhs += std::abs(v[i] - rep.V[h - 1][i]);
      double lam_x = vector_Lambda(X).get_d();
      // rhs = d (eps_hat + C r^k) Lambda_X, evaluated in the log domain for C r^k.
      double rate = st.log_rate > 700 ? std::numeric_limits<double>::infinity() : std::exp(st.log_rate);
      pc.lhs = lhs;
      pc.rhs = static_cast<double>(d) * (st.eps_hat + rate) * lam_x;
      pc.ok = lhs <= pc.rhs + 1e-9;
      if (!pc.ok) rep.bound_ok = false;
      st.probes.push_back(pc);
    }
    rep.partition_ok = rep.partition_ok && st.partition_ok;
    rep.rate_ok = rep.rate_ok && st.rate_ok;
    rep.trapping_ok = rep.trapping_ok && st.trapping_ok;
    rep.steps.push_back(std::move(st));
  }
  rep.stable_since = last_unstable ? last_unstable + 1 : first;
  return rep;
}

}  // namespace mpl

#pragma once

#include "matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace mpl {

// Singular values (descending) by cyclic one-sided Jacobi orthogonalization.
inline std::vector<double> singular_values(const FloatMatrix& a, double threshold = 1e-13, int max_sweeps = 100) {
  if (a.rows() > 16 || a.cols() > 16) throw std::invalid_argument("singular_values supports d <= 16");
  std::size_t m = a.rows(), n = a.cols();
  // Work on columns of a copy; scale to unit max entry to avoid overflow.
  double scale = 0;
  for (double x : a.data()) scale = std::max(scale, std::abs(x));
  if (scale == 0) return std::vector<double>(std::min(m, n), 0.0);
  std::vector<std::vector<double>> c(n, std::vector<double>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) c[j][i] = a(i, j) / scale;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += c[p][i] * c[p][i];
          beta += c[q][i] * c[q][i];
          gamma += c[p][i] * c[q][i];
        }
        if (alpha == 0 || beta == 0 || gamma == 0) continue;
        double rel = gamma * gamma / (alpha * beta);
        off += rel;
        if (std::sqrt(rel) < threshold) continue;
        double zeta = (beta - alpha) / (2 * gamma);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        double cs = 1 / std::sqrt(1 + t * t), sn = cs * t;
        for (std::size_t i = 0; i < m; ++i) {
          double x = c[p][i], y = c[q][i];
          c[p][i] = cs * x - sn * y;
          c[q][i] = sn * x + cs * y;
        }
      }
    }
    if (std::sqrt(off) < threshold) break;
  }
  std::vector<double> s;
  for (std::size_t j = 0; j < n; ++j) {
    double nn = 0;
    for (double x : c[j]) nn += x * x;
    s.push_back(std::sqrt(nn) * scale);
  }
  std::sort(s.rbegin(), s.rend());
  s.resize(std::min(m, n));
  return s;
}

struct SingularGap {
  double sigma1 = 0;
  double sigma2 = 0;
  double ratio = 0;
};

inline SingularGap singular_gap(const FloatMatrix& p) {
  auto s = singular_values(p);
  SingularGap g;
  if (s.empty() || s[0] == 0) return g;
  g.sigma1 = s[0];
  g.sigma2 = s.size() > 1 ? s[1] : 0.0;
  g.ratio = g.sigma2 / g.sigma1;
  return g;
}

namespace detail {

using CMat = Eigen::MatrixXcd;

// Orthonormal basis of the numerical null space of m.
inline CMat null_space(const CMat& m, double tol) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol * std::max(1.0, top)) ++rank;
  const CMat& v = svd.matrixV();
  return v.rightCols(v.cols() - rank);
}

// Distinct eigenvalues of b; defective clusters are merged and values
// numerically close to 0 are snapped to 0.
inline std::vector<std::complex<double>> eigenvalue_clusters(const CMat& b) {
  Eigen::ComplexEigenSolver<CMat> es(b);
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  std::vector<std::vector<std::complex<double>>> groups;
  for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) {
    std::complex<double> nu = es.eigenvalues()(t);
    if (std::abs(nu) < 1e-3 * scale) nu = 0;
    bool placed = false;
    for (auto& g : groups)
      if (std::abs(g.front() - nu) < 1e-3 * scale) {
        g.push_back(nu);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({nu});
  }
  std::vector<std::complex<double>> out;
  for (const auto& g : groups) {
    std::complex<double> m = 0;
    for (auto x : g) m += x;
    m /= static_cast<double>(g.size());
    if (std::abs(m.imag()) < 1e-12 * scale) m = m.real();
    out.push_back(m);
  }
  return out;
}

inline bool common_eigvec_search(const std::vector<CMat>& fam, std::size_t k, const CMat& e, double tol) {
  if (e.cols() == 0) return false;
  if (k == fam.size()) return true;
  const CMat& b = fam[k];
  Eigen::Index d = b.rows();
  for (auto nu : eigenvalue_clusters(b)) {
    CMat restricted = (b - nu * CMat::Identity(d, d)) * e;
    CMat n = null_space(restricted, tol);
    if (n.cols() == 0) continue;
    if (common_eigvec_search(fam, k + 1, e * n, tol)) return true;
  }
  return false;
}

}  // namespace detail

// True iff a single row vector x satisfies x A = mu_A x for every A in the
// family (eigenvalues may differ between members).
inline bool common_left_eigvec_check(const std::vector<FloatMatrix>& family, double tol = 1e-8) {
  if (family.empty()) throw std::invalid_argument("empty family");
  std::size_t d = family.front().rows();
  if (d > 16) throw std::invalid_argument("common_left_eigvec_check supports d <= 16");
  std::vector<detail::CMat> fam;
  for (const auto& a : family) {
    if (a.rows() != d || a.cols() != d) throw std::invalid_argument("family members must be square of equal size");
    detail::CMat m(d, d);
    // Left eigenvectors of A are right eigenvectors of A^T.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(j, i);
    fam.push_back(m);
  }
  detail::CMat start = detail::CMat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  return detail::common_eigvec_search(fam, 0, start, tol);
}

}  // namespace mpl

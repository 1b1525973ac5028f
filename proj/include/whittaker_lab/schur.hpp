#pragma once

#include "whittaker_lab/error.hpp"
#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/series.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace wlab {

/// The index m = (m_1, ..., m_{n-1}) of a Schur polynomial, all entries >= 0.
/// Interchangeably the valuation vector lambda of a torus coset.
using LatticeIndex = std::vector<int>;

/// Weakly decreasing n-vector with last part 0.
using Partition = std::vector<int>;

/// parts[j] = m_1 + ... + m_{n-1-j}, so parts = (m_1+...+m_{n-1}, ..., m_1, 0).
Partition m_to_partition(const LatticeIndex& m);

/// |m_to_partition(m)| = sum_k (n-k) m_k; the homogeneous degree of s_m.
int partition_weight(const LatticeIndex& m);

/// Satake parameters alpha in (C \ {0})^n.
class SpectralParams {
 public:
  static constexpr double kUnitDeterminantTolerance = 1e-10;

  explicit SpectralParams(Eigen::VectorXcd alpha, bool unit_determinant = false);
  SpectralParams(std::initializer_list<Complex> alpha, bool unit_determinant = false);

  const Eigen::VectorXcd& alpha() const noexcept { return alpha_; }
  int n() const noexcept { return static_cast<int>(alpha_.size()); }
  bool unit_determinant() const noexcept { return unit_determinant_; }
  Complex product() const { return alpha_.prod(); }
  double max_abs() const { return alpha_.cwiseAbs().maxCoeff(); }
  /// Entrywise reciprocal; keeps the unit-determinant flag.
  SpectralParams reciprocal() const;

 private:
  Eigen::VectorXcd alpha_;
  bool unit_determinant_;
};

namespace detail {

inline void check_index(const LatticeIndex& m, Eigen::Index n) {
  if (n < 2) fail(ErrorKind::dimension, "spectral alphabet needs n >= 2");
  if (static_cast<Eigen::Index>(m.size()) + 1 != n) {
    fail(ErrorKind::dimension, "index length " + std::to_string(m.size()) +
                                   " does not match n-1 = " + std::to_string(n - 1));
  }
  for (int x : m) {
    if (x < 0) fail(ErrorKind::domain, "Schur index entries must be nonnegative");
  }
}

/// Number of nonzero parts.
inline int partition_length(const Partition& parts) {
  return static_cast<int>(std::count_if(parts.begin(), parts.end(), [](int x) { return x > 0; }));
}

}  // namespace detail

/// h_0, ..., h_max_degree of the alphabet, by h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
complete_homogeneous(const Eigen::MatrixBase<Derived>& alphabet, int max_degree) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(std::max(max_degree, 0) + 1);
  h(0) = Scalar(1);
  for (Eigen::Index j = 0; j < alphabet.size(); ++j) {
    for (int k = 1; k <= max_degree; ++k) h(k) += alphabet(j) * h(k - 1);
  }
  return h;
}

/// Jacobi-Trudi determinant det[h_{lambda_i - i + j}] from precomputed h.
template <typename Vector>
typename Vector::Scalar jacobi_trudi_from_h(const Partition& parts, const Vector& h) {
  using Scalar = typename Vector::Scalar;
  const int len = detail::partition_length(parts);
  if (len == 0) return Scalar(1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jt(len, len);
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < len; ++j) {
      const int k = parts[static_cast<std::size_t>(i)] - i + j;
      jt(i, j) = k < 0 ? Scalar(0) : h(k);
    }
  }
  return jt.determinant();
}

/// Schur polynomial s_m(alpha) as a Jacobi-Trudi determinant. Defined for
/// repeated parameters.
template <typename Derived>
typename Derived::Scalar schur_jacobi_trudi(const LatticeIndex& m, const Eigen::MatrixBase<Derived>& alpha) {
  detail::check_index(m, alpha.size());
  const Partition parts = m_to_partition(m);
  const int len = detail::partition_length(parts);
  return jacobi_trudi_from_h(parts, complete_homogeneous(alpha, parts.front() + len));
}

/// Minimum pairwise separation below which the bialternant is refused.
inline constexpr double kBialternantMinSeparation = 1e-6;

/// Schur polynomial as the ratio of the alternant with exponents
/// parts[i] + n-1-i over the Vandermonde alternant.
template <typename Derived>
typename Derived::Scalar schur_bialternant(const LatticeIndex& m, const Eigen::MatrixBase<Derived>& alpha) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  detail::check_index(m, alpha.size());
  const Eigen::Index n = alpha.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (abs(alpha(i) - alpha(j)) <= kBialternantMinSeparation) {
        fail(ErrorKind::conditioning,
             "spectral parameters nearly coincide; use schur_jacobi_trudi instead of the bialternant");
      }
    }
  }
  const Partition parts = m_to_partition(m);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> numerator(n, n), vandermonde(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int base = static_cast<int>(n - 1 - i);
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar power(1);
      for (int e = 0; e < base; ++e) power *= alpha(j);
      vandermonde(i, j) = power;
      for (int e = 0; e < parts[static_cast<std::size_t>(i)]; ++e) power *= alpha(j);
      numerator(i, j) = power;
    }
  }
  return numerator.determinant() / vandermonde.determinant();
}

inline constexpr int kTableauMaxSize = 12;
inline constexpr int kTableauMaxRank = 5;

/// Sum of alpha^T over semistandard Young tableaux T of shape
/// m_to_partition(m) with entries in 1..n. Ground truth for small shapes.
template <typename Derived>
typename Derived::Scalar schur_tableau_oracle(const LatticeIndex& m, const Eigen::MatrixBase<Derived>& alpha) {
  using Scalar = typename Derived::Scalar;
  detail::check_index(m, alpha.size());
  const Partition parts = m_to_partition(m);
  const int size = std::accumulate(parts.begin(), parts.end(), 0);
  const int n = static_cast<int>(alpha.size());
  if (size > kTableauMaxSize || n > kTableauMaxRank) {
    fail(ErrorKind::guard, "tableau oracle limited to |partition| <= 12 and n <= 5");
  }

  // Cells in row-major order; fill[r][c] is the entry of cell (r, c).
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < parts[static_cast<std::size_t>(r)]; ++c) cells.emplace_back(r, c);
  }
  std::vector<std::vector<int>> fill(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) fill[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(parts[static_cast<std::size_t>(r)]));

  Scalar total(0);
  auto recurse = [&](auto&& self, std::size_t idx, Scalar weight) -> void {
    if (idx == cells.size()) {
      total += weight;
      return;
    }
    const auto [r, c] = cells[idx];
    int lo = 0;
    if (c > 0) lo = std::max(lo, fill[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)]);
    if (r > 0) lo = std::max(lo, fill[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] + 1);
    for (int v = lo; v < n; ++v) {
      fill[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
      self(self, idx + 1, weight * alpha(v));
    }
  };
  recurse(recurse, 0, Scalar(1));
  return total;
}

/// Schur evaluator for many indices over one alphabet; h_k is computed once.
template <typename Scalar>
class SchurEvaluator {
 public:
  template <typename Derived>
  SchurEvaluator(const Eigen::MatrixBase<Derived>& alphabet, int max_first_part)
      : n_(static_cast<int>(alphabet.size())),
        h_(complete_homogeneous(alphabet.template cast<Scalar>(), max_first_part + n_)) {}

  Scalar operator()(const LatticeIndex& m) const {
    detail::check_index(m, n_);
    const Partition parts = m_to_partition(m);
    if (parts.front() + detail::partition_length(parts) > h_.size()) {
      fail(ErrorKind::guard, "SchurEvaluator degree cache exceeded");
    }
    return jacobi_trudi_from_h(parts, h_);
  }

  int n() const noexcept { return n_; }

 private:
  int n_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h_;
};

inline Complex schur_jacobi_trudi(const LatticeIndex& m, const SpectralParams& a) {
  return schur_jacobi_trudi(m, a.alpha());
}
inline Complex schur_bialternant(const LatticeIndex& m, const SpectralParams& a) {
  return schur_bialternant(m, a.alpha());
}
inline Complex schur_tableau_oracle(const LatticeIndex& m, const SpectralParams& a) {
  return schur_tableau_oracle(m, a.alpha());
}

inline constexpr int kSchurLaurentMaxSize = 40;

/// s_m(beta) (or s_m(1/beta) when inverted) as a Laurent polynomial in
/// beta_1..beta_{n-1} with beta_n = 1/(beta_1 ... beta_{n-1}) substituted.
LaurentPoly schur_laurent(const LatticeIndex& m, bool inverted, int n);

/// (1 - prod alpha prod beta) / prod_{i,j} (1 - alpha_i beta_j); requires |alpha_i beta_j| < 1.
Complex cauchy_rhs(const SpectralParams& a, const SpectralParams& b);

/// sum_{0 <= m_k <= M} s_m(alpha) s_m(beta) with a rigorous tail bound.
SeriesResult cauchy_lhs_truncated(const SpectralParams& a, const SpectralParams& b, int M);

/// (det[1/(1 - alpha_i beta_j)], V(alpha) V(beta) / prod (1 - alpha_i beta_j)).
std::pair<Complex, Complex> cauchy_determinant_check(const SpectralParams& a, const SpectralParams& b);

}  // namespace wlab

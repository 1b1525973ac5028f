#include "whittaker_lab/schur.hpp"

#include "whittaker_lab/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace wlab {

Partition m_to_partition(const LatticeIndex& m) {
  const std::size_t n = m.size() + 1;
  Partition parts(n, 0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    // parts[j] = m_1 + ... + m_{n-1-j}
    for (std::size_t k = 0; k < n - 1 - j; ++k) parts[j] += m[k];
  }
  return parts;
}

int partition_weight(const LatticeIndex& m) {
  const int n = static_cast<int>(m.size()) + 1;
  int w = 0;
  for (int k = 1; k < n; ++k) w += (n - k) * m[static_cast<std::size_t>(k - 1)];
  return w;
}

SpectralParams::SpectralParams(Eigen::VectorXcd alpha, bool unit_determinant)
    : alpha_(std::move(alpha)), unit_determinant_(unit_determinant) {
  if (alpha_.size() < 2) fail(ErrorKind::dimension, "spectral parameters need n >= 2");
  for (Eigen::Index i = 0; i < alpha_.size(); ++i) {
    if (alpha_(i) == Complex{}) fail(ErrorKind::domain, "spectral parameters must be nonzero");
    if (!std::isfinite(alpha_(i).real()) || !std::isfinite(alpha_(i).imag())) {
      fail(ErrorKind::domain, "spectral parameters must be finite");
    }
  }
  if (unit_determinant_ && std::abs(alpha_.prod() - Complex(1.0)) > kUnitDeterminantTolerance) {
    fail(ErrorKind::domain, "spectral parameters flagged unit-determinant but prod alpha != 1");
  }
}

SpectralParams::SpectralParams(std::initializer_list<Complex> alpha, bool unit_determinant)
    : SpectralParams(Eigen::Map<const Eigen::VectorXcd>(alpha.begin(), static_cast<Eigen::Index>(alpha.size())),
                     unit_determinant) {}

SpectralParams SpectralParams::reciprocal() const {
  return SpectralParams(alpha_.cwiseInverse(), unit_determinant_);
}

namespace {

using LaurentVector = std::vector<LaurentPoly>;

LaurentPoly laurent_determinant(const std::vector<LaurentVector>& matrix, int rank) {
  const std::size_t len = matrix.size();
  std::vector<std::size_t> perm(len);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly det(rank);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = i + 1; j < len; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    LaurentPoly term = LaurentPoly::constant(rank, inversions % 2 == 0 ? 1.0 : -1.0);
    for (std::size_t i = 0; i < len && !term.empty(); ++i) term = term * matrix[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

LaurentPoly schur_laurent(const LatticeIndex& m, bool inverted, int n) {
  detail::check_index(m, n);
  const Partition parts = m_to_partition(m);
  const int size = std::accumulate(parts.begin(), parts.end(), 0);
  if (size > kSchurLaurentMaxSize) {
    fail(ErrorKind::guard, "schur_laurent limited to |partition| <= 40, got " + std::to_string(size));
  }
  const int len = detail::partition_length(parts);
  if (len == 0) return LaurentPoly::constant(n, 1.0);

  // Complete homogeneous polynomials in the full substituted alphabet.
  const int max_degree = parts.front() + len - 1;
  std::vector<LaurentPoly> h(static_cast<std::size_t>(max_degree) + 1, LaurentPoly(n));
  h[0] = LaurentPoly::constant(n, 1.0);
  for (int axis = 0; axis < n; ++axis) {
    const LaurentPoly x = alphabet_variable(n, axis);
    for (int k = 1; k <= max_degree; ++k) {
      h[static_cast<std::size_t>(k)] += x * h[static_cast<std::size_t>(k - 1)];
    }
  }

  std::vector<LaurentVector> jt(static_cast<std::size_t>(len), LaurentVector(static_cast<std::size_t>(len), LaurentPoly(n)));
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < len; ++j) {
      const int k = parts[static_cast<std::size_t>(i)] - i + j;
      if (k >= 0) jt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(k)];
    }
  }
  LaurentPoly s = laurent_determinant(jt, n);
  return inverted ? s.inverted() : s;
}

namespace {

void check_pair(const SpectralParams& a, const SpectralParams& b) {
  if (a.n() != b.n()) fail(ErrorKind::dimension, "alpha and beta must have the same length");
}

double max_cross_product(const SpectralParams& a, const SpectralParams& b) {
  return a.max_abs() * b.max_abs();
}

}  // namespace

Complex cauchy_rhs(const SpectralParams& a, const SpectralParams& b) {
  check_pair(a, b);
  if (max_cross_product(a, b) >= 1.0) {
    fail(ErrorKind::domain, "Cauchy identity requires |alpha_i beta_j| < 1");
  }
  Complex denom(1.0);
  for (Eigen::Index i = 0; i < a.n(); ++i) {
    for (Eigen::Index j = 0; j < b.n(); ++j) denom *= 1.0 - a.alpha()(i) * b.alpha()(j);
  }
  return (1.0 - a.product() * b.product()) / denom;
}

SeriesResult cauchy_lhs_truncated(const SpectralParams& a, const SpectralParams& b, int M) {
  check_pair(a, b);
  if (M < 0) fail(ErrorKind::domain, "truncation M must be >= 0");
  if (max_cross_product(a, b) >= 1.0) {
    fail(ErrorKind::domain, "Cauchy identity requires |alpha_i beta_j| < 1");
  }
  const int n = a.n();
  const int dims = n - 1;
  const SchurEvaluator<Complex> sa(a.alpha(), dims * M);
  const SchurEvaluator<Complex> sb(b.alpha(), dims * M);

  std::size_t count = 1;
  for (int k = 0; k < dims; ++k) count *= static_cast<std::size_t>(M + 1);
  const Complex value = parallel::tree_sum<Complex>(count, [&](std::size_t flat) {
    LatticeIndex m(static_cast<std::size_t>(dims));
    for (int k = dims - 1; k >= 0; --k) {
      m[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(M + 1));
      flat /= static_cast<std::size_t>(M + 1);
    }
    return sa(m) * sb(m);
  });

  std::vector<GeometricFactor> factors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      factors.push_back({std::abs(a.alpha()(i)) * std::abs(b.alpha()(j)), 1});
    }
  }
  return {value, geometric_tail(factors, M)};
}

std::pair<Complex, Complex> cauchy_determinant_check(const SpectralParams& a, const SpectralParams& b) {
  check_pair(a, b);
  const Eigen::Index n = a.n();
  Eigen::MatrixXcd kernel(n, n);
  Complex denom(1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex f = 1.0 - a.alpha()(i) * b.alpha()(j);
      if (std::abs(f) < 1e-14) fail(ErrorKind::pole, "1 - alpha_i beta_j vanishes");
      kernel(j, i) = 1.0 / f;
      denom *= f;
    }
  }
  Complex va(1.0), vb(1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      va *= a.alpha()(i) - a.alpha()(j);
      vb *= b.alpha()(i) - b.alpha()(j);
    }
  }
  return {kernel.determinant(), va * vb / denom};
}

}  // namespace wlab

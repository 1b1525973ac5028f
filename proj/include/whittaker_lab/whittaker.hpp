#pragma once

#include "whittaker_lab/error.hpp"
#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/schur.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace wlab {

/// v_k = -log_p |t_k|_p for the torus coset diag(t_1...t_{n-1}, ..., t_1, 1).
/// Entries may be negative; the Whittaker function vanishes there.
using ValuationVector = std::vector<int>;

/// The residue characteristic p and the rank n of GL(n, Q_p).
class PrimeContext {
 public:
  PrimeContext(int p, int n);

  int p() const noexcept { return p_; }
  int n() const noexcept { return n_; }

  static bool is_prime(int p) noexcept;

 private:
  int p_;
  int n_;
};

/// S(v) = sum_k v_k k(n-k), so that delta(v) = p^{-S(v)}.
long delta_exponent(const ValuationVector& v, const PrimeContext& ctx);

/// delta(t) = prod_k |t_k|_p^{k(n-k)} = p^{-S(v)}.
double delta(const ValuationVector& v, const PrimeContext& ctx);

/// delta^{1/2}(v) = p^{-S(v)/2}, an exact half-integer power of p.
double sqrt_delta(const ValuationVector& v, const PrimeContext& ctx);

inline bool in_integral_cone(const ValuationVector& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

/// W_alpha(t) = delta^{1/2}(t) s_v(alpha) on the cone v >= 0 and 0 elsewhere.
/// Works for any scalar type of alpha.
template <typename Derived>
typename Derived::Scalar whittaker_value(const Eigen::MatrixBase<Derived>& alpha, const ValuationVector& v,
                                         const PrimeContext& ctx) {
  using Scalar = typename Derived::Scalar;
  if (alpha.size() != ctx.n()) fail(ErrorKind::dimension, "alpha length must equal n");
  if (static_cast<int>(v.size()) != ctx.n() - 1) fail(ErrorKind::dimension, "valuation length must be n-1");
  if (!in_integral_cone(v)) return Scalar(0);
  return Scalar(sqrt_delta(v, ctx)) * schur_jacobi_trudi(v, alpha);
}

Complex whittaker_eval(const SpectralParams& a, const ValuationVector& v, const PrimeContext& ctx);

/// delta^{1/2}(v) s_v(beta) (or s_v(1/beta)) as a Laurent polynomial on the
/// unit-determinant torus. Throws a support error for negative valuations.
LaurentPoly whittaker_laurent(const ValuationVector& v, bool inverted, const PrimeContext& ctx);

}  // namespace wlab

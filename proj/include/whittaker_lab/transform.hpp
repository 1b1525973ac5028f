#pragma once

#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/schur.hpp"
#include "whittaker_lab/series.hpp"
#include "whittaker_lab/whittaker.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <variant>

namespace wlab {

/// A finitely supported function on the valuation lattice Z_{>=0}^{n-1}.
/// Values at unit parts are irrelevant; only valuations are stored.
class CompactFunction {
 public:
  explicit CompactFunction(PrimeContext ctx) : ctx_(ctx) {}

  static CompactFunction indicator(const PrimeContext& ctx, const LatticeIndex& v, Complex value = 1.0);

  /// Stores value at v (v >= 0 required). Zero values are erased.
  void set(const LatticeIndex& v, Complex value);
  /// h(v); 0 outside the stored support, including off the cone.
  Complex operator()(const ValuationVector& v) const;

  const std::map<LatticeIndex, Complex>& values() const noexcept { return values_; }
  const PrimeContext& context() const noexcept { return ctx_; }
  bool empty() const noexcept { return values_.empty(); }

 private:
  PrimeContext ctx_;
  std::map<LatticeIndex, Complex> values_;
};

enum class SymmetryCheck { sample, trusted };

/// A symmetric function of the spectral alphabet, either as an exact Laurent
/// polynomial in beta_1..beta_{n-1} or as a black-box torus evaluator.
class SpectralFunction {
 public:
  using Evaluator = std::function<Complex(std::span<const Complex>)>;

  /// Throws a contract error if the sampled S_n symmetry check fails.
  static SpectralFunction exact(LaurentPoly H, const PrimeContext& ctx,
                                SymmetryCheck check = SymmetryCheck::sample);
  static SpectralFunction from_evaluator(Evaluator f, bool symmetric, const PrimeContext& ctx);

  bool is_exact() const noexcept { return std::holds_alternative<LaurentPoly>(rep_); }
  bool symmetric() const noexcept { return symmetric_; }
  const PrimeContext& context() const noexcept { return ctx_; }
  const LaurentPoly& polynomial() const;

  /// Value at the torus point (beta_1, ..., beta_{n-1}).
  Complex operator()(std::span<const Complex> point) const;

 private:
  SpectralFunction(std::variant<LaurentPoly, Evaluator> rep, bool symmetric, const PrimeContext& ctx)
      : rep_(std::move(rep)), symmetric_(symmetric), ctx_(ctx) {}

  std::variant<LaurentPoly, Evaluator> rep_;
  bool symmetric_;
  PrimeContext ctx_;
};

/// Sampled invariance of H under S_n acting on (beta_1, ..., beta_{n-1}, 1/prod):
/// 20 random torus points, 10 random permutations each, relative tolerance
/// against the coefficient l1 norm.
bool is_symmetric_by_sampling(const LaurentPoly& H, double tolerance = 1e-10);

struct RegularizedPairingParams {
  double epsilon = 0.0;
  int M = 40;
};

/// Declared decay |h(v)| <= C delta^{1/2}(v) p^{-(eta + eps0) sum_k (n-k) v_k}.
struct DecayBound {
  double C = 1.0;
  double eta = 0.0;
  double eps0 = 0.0;
};

inline constexpr int kDefaultTruncation = 40;

/// Mass of the valuation shell v under d^x t: p^{S(v)} = 1/delta(v).
double measure_weight(const ValuationVector& v, const PrimeContext& ctx);

/// prod_{i != j} (beta_i - beta_j) with beta_n = 1/(beta_1 ... beta_{n-1}).
LaurentPoly vandermonde_laurent(int n);

/// h#(alpha) = sum_v h(v) W_alpha(v) measure_weight(v).
Complex forward_transform(const CompactFunction& h, const SpectralParams& a);

/// Exact symbolic image sum_v h(v) delta^{-1/2}(v) s_v(beta).
SpectralFunction forward_transform_laurent(const CompactFunction& h);

/// Truncated forward transform over the cube [0, M]^{n-1} with a tail bound
/// derived from the declared decay. Missing decay is a contract error.
SeriesResult forward_transform_series(const std::function<Complex(const LatticeIndex&)>& hval,
                                      const SpectralParams& a, const std::optional<DecayBound>& decay, int M,
                                      const PrimeContext& ctx);

/// H-flat(v) as the constant term of (1/n!) H(beta) W_{1/beta}(v) prod_{i!=j}(beta_i - beta_j).
Complex inverse_transform_exact(const SpectralFunction& H, const ValuationVector& v);

/// H-flat on its whole support: every v >= 0 with sum v <= H.spread().
CompactFunction inverse_transform_image(const SpectralFunction& H);

/// Tensor trapezoid rule with N nodes per circle applied to the defining torus integral.
Complex inverse_transform_quadrature(const SpectralFunction& H, const ValuationVector& v, int N);

/// Smallest N for which inverse_transform_quadrature is exact for an exact H at v.
int exact_quadrature_nodes(const SpectralFunction& H, const ValuationVector& v);

/// Truncated sum_m s_m(alpha) s_m(beta) p^{-eps sum_k (n-k) m_k} over [0, M]^{n-1}.
SeriesResult whittaker_pairing(const SpectralParams& a, const SpectralParams& b,
                               const RegularizedPairingParams& params, const PrimeContext& ctx);

/// (1 - prod alpha prod beta p^{-eps n}) / prod_{i,j} (1 - alpha_i beta_j p^{-eps}).
Complex stade_rhs(const SpectralParams& a, const SpectralParams& b, double epsilon, const PrimeContext& ctx);

/// sum_v h1(v) conj(h2(v)) measure_weight(v).
Complex plancherel_geometric(const CompactFunction& h1, const CompactFunction& h2);

/// (1/n!) CT[H1 conj(H2) prod_{i!=j}(beta_i - beta_j)], conjugation realized as
/// coefficient conjugation plus exponent negation.
Complex plancherel_spectral(const SpectralFunction& H1, const SpectralFunction& H2);

}  // namespace wlab

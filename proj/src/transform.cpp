#include "whittaker_lab/transform.hpp"

#include "whittaker_lab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace wlab {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_valuation(const ValuationVector& v, const PrimeContext& ctx) {
  if (static_cast<int>(v.size()) != ctx.n() - 1) {
    fail(ErrorKind::dimension, "valuation length must be n-1 = " + std::to_string(ctx.n() - 1));
  }
}

LatticeIndex decode_cube(std::size_t flat, int dims, int side) {
  LatticeIndex m(static_cast<std::size_t>(dims));
  for (int k = dims - 1; k >= 0; --k) {
    m[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(side));
    flat /= static_cast<std::size_t>(side);
  }
  return m;
}

std::size_t cube_size(int dims, int side) {
  std::size_t count = 1;
  for (int k = 0; k < dims; ++k) count *= static_cast<std::size_t>(side);
  return count;
}

/// Full alphabet (beta_1, ..., beta_{n-1}, 1/prod) from a torus point.
Eigen::VectorXcd full_alphabet(std::span<const Complex> point) {
  Eigen::VectorXcd full(static_cast<Eigen::Index>(point.size()) + 1);
  Complex prod(1.0);
  for (std::size_t i = 0; i < point.size(); ++i) {
    full(static_cast<Eigen::Index>(i)) = point[i];
    prod *= point[i];
  }
  full(full.size() - 1) = 1.0 / prod;
  return full;
}

Complex vandermonde_value(const Eigen::VectorXcd& full) {
  Complex v(1.0);
  for (Eigen::Index i = 0; i < full.size(); ++i) {
    for (Eigen::Index j = 0; j < full.size(); ++j) {
      if (i != j) v *= full(i) - full(j);
    }
  }
  return v;
}

void require_symmetric(const SpectralFunction& H) {
  if (!H.symmetric()) {
    fail(ErrorKind::contract, "inverse Whittaker transform requires a symmetric spectral function");
  }
}

/// H-flat(v) given the cached product H * prod_{i!=j}(beta_i - beta_j).
Complex inverse_from_weighted(const LaurentPoly& weighted, const ValuationVector& v, const PrimeContext& ctx) {
  if (!in_integral_cone(v)) return Complex{};
  const LaurentPoly w = whittaker_laurent(v, /*inverted=*/true, ctx);
  return constant_term_of_product(weighted, w) / factorial(ctx.n());
}

}  // namespace

CompactFunction CompactFunction::indicator(const PrimeContext& ctx, const LatticeIndex& v, Complex value) {
  CompactFunction h(ctx);
  h.set(v, value);
  return h;
}

void CompactFunction::set(const LatticeIndex& v, Complex value) {
  check_valuation(v, ctx_);
  if (!in_integral_cone(v)) {
    fail(ErrorKind::support, "compact functions are supported on v >= 0");
  }
  if (value == Complex{}) {
    values_.erase(v);
  } else {
    values_[v] = value;
  }
}

Complex CompactFunction::operator()(const ValuationVector& v) const {
  auto it = values_.find(v);
  return it == values_.end() ? Complex{} : it->second;
}

bool is_symmetric_by_sampling(const LaurentPoly& H, double tolerance) {
  const int n = H.rank();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double scale = std::max(1.0, H.sum_abs_coefficients());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> point(static_cast<std::size_t>(n - 1));
    for (auto& z : point) z = std::polar(1.0, phase(rng));
    const Eigen::VectorXcd full = full_alphabet(point);
    const Complex base = evaluate(H, std::span<const Complex>(point));
    for (int p = 0; p < 10; ++p) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Complex> moved(static_cast<std::size_t>(n - 1));
      for (int i = 0; i + 1 < n; ++i) moved[static_cast<std::size_t>(i)] = full(perm[static_cast<std::size_t>(i)]);
      if (std::abs(evaluate(H, std::span<const Complex>(moved)) - base) > tolerance * scale) return false;
    }
  }
  return true;
}

SpectralFunction SpectralFunction::exact(LaurentPoly H, const PrimeContext& ctx, SymmetryCheck check) {
  if (H.rank() != ctx.n()) fail(ErrorKind::dimension, "Laurent rank must equal n");
  if (check == SymmetryCheck::sample && !is_symmetric_by_sampling(H)) {
    fail(ErrorKind::contract, "spectral polynomial is not symmetric under S_n");
  }
  return SpectralFunction(std::move(H), true, ctx);
}

SpectralFunction SpectralFunction::from_evaluator(Evaluator f, bool symmetric, const PrimeContext& ctx) {
  if (!f) fail(ErrorKind::contract, "empty spectral evaluator");
  return SpectralFunction(std::move(f), symmetric, ctx);
}

const LaurentPoly& SpectralFunction::polynomial() const {
  if (!is_exact()) fail(ErrorKind::contract, "spectral function has no exact Laurent representative");
  return std::get<LaurentPoly>(rep_);
}

Complex SpectralFunction::operator()(std::span<const Complex> point) const {
  if (is_exact()) return evaluate(std::get<LaurentPoly>(rep_), point);
  return std::get<Evaluator>(rep_)(point);
}

double measure_weight(const ValuationVector& v, const PrimeContext& ctx) {
  return std::pow(static_cast<double>(ctx.p()), static_cast<double>(delta_exponent(v, ctx)));
}

LaurentPoly vandermonde_laurent(int n) {
  LaurentPoly v = LaurentPoly::constant(n, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) v = v * (alphabet_variable(n, i) - alphabet_variable(n, j));
    }
  }
  return v;
}

Complex forward_transform(const CompactFunction& h, const SpectralParams& a) {
  const PrimeContext& ctx = h.context();
  if (a.n() != ctx.n()) fail(ErrorKind::dimension, "alpha length must equal n");
  Complex acc{};
  for (const auto& [v, value] : h.values()) {
    acc += value * whittaker_eval(a, v, ctx) * measure_weight(v, ctx);
  }
  return acc;
}

SpectralFunction forward_transform_laurent(const CompactFunction& h) {
  const PrimeContext& ctx = h.context();
  LaurentPoly H(ctx.n());
  for (const auto& [v, value] : h.values()) {
    H += schur_laurent(v, /*inverted=*/false, ctx.n()) * (value / sqrt_delta(v, ctx));
  }
  return SpectralFunction::exact(std::move(H), ctx, SymmetryCheck::trusted);
}

SeriesResult forward_transform_series(const std::function<Complex(const LatticeIndex&)>& hval,
                                      const SpectralParams& a, const std::optional<DecayBound>& decay, int M,
                                      const PrimeContext& ctx) {
  if (!decay) fail(ErrorKind::contract, "forward_transform_series needs a declared decay bound");
  if (a.n() != ctx.n()) fail(ErrorKind::dimension, "alpha length must equal n");
  if (M < 0) fail(ErrorKind::domain, "truncation M must be >= 0");
  if (decay->C < 0.0 || decay->eta < 0.0 || decay->eps0 <= 0.0) {
    fail(ErrorKind::contract, "decay bound needs C >= 0, eta >= 0, eps0 > 0");
  }
  const double p = ctx.p();
  const double annulus = std::pow(p, decay->eta);
  if (a.max_abs() > annulus * (1.0 + 1e-12) || a.alpha().cwiseAbs().minCoeff() < (1.0 - 1e-12) / annulus) {
    fail(ErrorKind::contract, "alpha lies outside the declared annulus p^{-eta} <= |alpha_i| <= p^{eta}");
  }

  const int n = ctx.n();
  const int dims = n - 1;
  const SchurEvaluator<Complex> schur(a.alpha(), dims * M);
  const Complex value = parallel::tree_sum<Complex>(cube_size(dims, M + 1), [&](std::size_t flat) {
    const LatticeIndex v = decode_cube(flat, dims, M + 1);
    const Complex hv = hval(v);
    if (hv == Complex{}) return Complex{};
    // h(v) W_alpha(v) measure_weight(v) = h(v) delta^{-1/2}(v) s_v(alpha)
    return hv / sqrt_delta(v, ctx) * schur(v);
  });

  // |term(v)| <= C q^{|v|} dim(v), and sum_{|lambda| = N} dim(lambda) is the
  // t^N coefficient of (1-t)^{-n} (1-t^2)^{-n(n-1)/2}.
  const double q = a.max_abs() * std::pow(p, -(decay->eta + decay->eps0));
  std::vector<GeometricFactor> factors;
  for (int i = 0; i < n; ++i) factors.push_back({q, 1});
  for (int i = 0; i < n * (n - 1) / 2; ++i) factors.push_back({q * q, 2});
  return {value, decay->C * geometric_tail(factors, M)};
}

Complex inverse_transform_exact(const SpectralFunction& H, const ValuationVector& v) {
  const PrimeContext& ctx = H.context();
  check_valuation(v, ctx);
  if (!in_integral_cone(v)) return Complex{};
  require_symmetric(H);
  const LaurentPoly weighted = H.polynomial() * vandermonde_laurent(ctx.n());
  return inverse_from_weighted(weighted, v, ctx);
}

CompactFunction inverse_transform_image(const SpectralFunction& H) {
  const PrimeContext& ctx = H.context();
  require_symmetric(H);
  const LaurentPoly weighted = H.polynomial() * vandermonde_laurent(ctx.n());
  const int radius = H.polynomial().spread();
  const int dims = ctx.n() - 1;
  CompactFunction image(ctx);
  // Enumerate v >= 0 with sum v <= radius.
  for (std::size_t flat = 0; flat < cube_size(dims, radius + 1); ++flat) {
    const LatticeIndex v = decode_cube(flat, dims, radius + 1);
    if (std::accumulate(v.begin(), v.end(), 0) > radius) continue;
    const Complex value = inverse_from_weighted(weighted, v, ctx);
    if (std::abs(value) > 0.0) image.set(v, value);
  }
  return image;
}

Complex inverse_transform_quadrature(const SpectralFunction& H, const ValuationVector& v, int N) {
  const PrimeContext& ctx = H.context();
  check_valuation(v, ctx);
  if (N < 4) fail(ErrorKind::domain, "quadrature needs N >= 4 nodes per circle");
  if (!in_integral_cone(v)) return Complex{};
  require_symmetric(H);

  const int n = ctx.n();
  const int dims = n - 1;
  const std::size_t count = cube_size(dims, N);
  const Complex sum = parallel::tree_sum<Complex>(count, [&](std::size_t flat) {
    const LatticeIndex node = decode_cube(flat, dims, N);
    std::vector<Complex> point(static_cast<std::size_t>(dims));
    for (int k = 0; k < dims; ++k) {
      point[static_cast<std::size_t>(k)] =
          std::polar(1.0, 2.0 * std::numbers::pi * node[static_cast<std::size_t>(k)] / N);
    }
    const Eigen::VectorXcd full = full_alphabet(point);
    const Eigen::VectorXcd reciprocal = full.cwiseInverse();
    return H(std::span<const Complex>(point)) * whittaker_value(reciprocal, v, ctx) * vandermonde_value(full);
  });
  return sum / (static_cast<double>(count) * factorial(n));
}

int exact_quadrature_nodes(const SpectralFunction& H, const ValuationVector& v) {
  const PrimeContext& ctx = H.context();
  check_valuation(v, ctx);
  if (!in_integral_cone(v)) return 4;
  const LaurentPoly& poly = H.polynomial();
  const LaurentPoly w = whittaker_laurent(v, true, ctx);
  const LaurentPoly vdm = vandermonde_laurent(ctx.n());
  int needed = 0;
  for (int axis = 0; axis < ctx.n() - 1; ++axis) {
    needed = std::max(needed, poly.max_abs_exponent(axis) + w.max_abs_exponent(axis) + vdm.max_abs_exponent(axis));
  }
  return std::max(4, needed + 1);
}

SeriesResult whittaker_pairing(const SpectralParams& a, const SpectralParams& b,
                               const RegularizedPairingParams& params, const PrimeContext& ctx) {
  if (a.n() != ctx.n() || b.n() != ctx.n()) fail(ErrorKind::dimension, "alpha and beta must have length n");
  if (params.epsilon < 0.0 || params.M < 0) fail(ErrorKind::domain, "pairing needs epsilon >= 0 and M >= 0");
  const double cross = a.max_abs() * b.max_abs();
  if (cross > 1.0 + 1e-12 || (params.epsilon == 0.0 && cross >= 1.0)) {
    fail(ErrorKind::domain, "Whittaker pairing diverges: need |alpha_i beta_j| <= 1 and (eps > 0 or strict)");
  }

  const int n = ctx.n();
  const int dims = n - 1;
  const int M = params.M;
  const double p = ctx.p();
  const SchurEvaluator<Complex> sa(a.alpha(), dims * M);
  const SchurEvaluator<Complex> sb(b.alpha(), dims * M);
  // The integrand W_alpha W_beta prod |t_k|^{eps(n-k)} d^x t on the shell v
  // reduces to s_v(alpha) s_v(beta) p^{-eps |v|}; the delta factors cancel.
  const Complex value = parallel::tree_sum<Complex>(cube_size(dims, M + 1), [&](std::size_t flat) {
    const LatticeIndex m = decode_cube(flat, dims, M + 1);
    return sa(m) * sb(m) * std::pow(p, -params.epsilon * partition_weight(m));
  });

  std::vector<GeometricFactor> factors;
  const double damp = std::pow(p, -params.epsilon);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      factors.push_back({std::abs(a.alpha()(i)) * std::abs(b.alpha()(j)) * damp, 1});
    }
  }
  return {value, geometric_tail(factors, M)};
}

Complex stade_rhs(const SpectralParams& a, const SpectralParams& b, double epsilon, const PrimeContext& ctx) {
  if (a.n() != ctx.n() || b.n() != ctx.n()) fail(ErrorKind::dimension, "alpha and beta must have length n");
  const int n = ctx.n();
  const double damp = std::pow(static_cast<double>(ctx.p()), -epsilon);
  Complex denom(1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex f = 1.0 - a.alpha()(i) * b.alpha()(j) * damp;
      if (std::abs(f) < 1e-14) fail(ErrorKind::pole, "1 - alpha_i beta_j p^{-eps} vanishes");
      denom *= f;
    }
  }
  const Complex numer = 1.0 - a.product() * b.product() * std::pow(damp, n);
  return numer / denom;
}

Complex plancherel_geometric(const CompactFunction& h1, const CompactFunction& h2) {
  if (h1.context().n() != h2.context().n() || h1.context().p() != h2.context().p()) {
    fail(ErrorKind::dimension, "Plancherel pairing needs a common prime context");
  }
  Complex acc{};
  for (const auto& [v, value] : h1.values()) {
    const Complex other = h2(v);
    if (other != Complex{}) acc += value * std::conj(other) * measure_weight(v, h1.context());
  }
  return acc;
}

Complex plancherel_spectral(const SpectralFunction& H1, const SpectralFunction& H2) {
  if (H1.context().n() != H2.context().n()) fail(ErrorKind::dimension, "rank mismatch");
  const int n = H1.context().n();
  const LaurentPoly weighted = H1.polynomial() * vandermonde_laurent(n);
  return constant_term_of_product(weighted, H2.polynomial().conj_inverted()) / factorial(n);
}

}  // namespace wlab

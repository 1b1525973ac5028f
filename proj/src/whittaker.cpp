#include "whittaker_lab/whittaker.hpp"

#include <string>

namespace wlab {

bool PrimeContext::is_prime(int p) noexcept {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

PrimeContext::PrimeContext(int p, int n) : p_(p), n_(n) {
  if (!is_prime(p)) fail(ErrorKind::context, "p = " + std::to_string(p) + " is not prime");
  if (n < 2) fail(ErrorKind::context, "rank n must be >= 2, got " + std::to_string(n));
}

long delta_exponent(const ValuationVector& v, const PrimeContext& ctx) {
  const int n = ctx.n();
  if (static_cast<int>(v.size()) != n - 1) fail(ErrorKind::dimension, "valuation length must be n-1");
  long s = 0;
  for (int k = 1; k < n; ++k) s += static_cast<long>(v[static_cast<std::size_t>(k - 1)]) * k * (n - k);
  return s;
}

double delta(const ValuationVector& v, const PrimeContext& ctx) {
  return std::pow(static_cast<double>(ctx.p()), -static_cast<double>(delta_exponent(v, ctx)));
}

double sqrt_delta(const ValuationVector& v, const PrimeContext& ctx) {
  return std::pow(static_cast<double>(ctx.p()), -0.5 * static_cast<double>(delta_exponent(v, ctx)));
}

Complex whittaker_eval(const SpectralParams& a, const ValuationVector& v, const PrimeContext& ctx) {
  return whittaker_value(a.alpha(), v, ctx);
}

LaurentPoly whittaker_laurent(const ValuationVector& v, bool inverted, const PrimeContext& ctx) {
  if (static_cast<int>(v.size()) != ctx.n() - 1) fail(ErrorKind::dimension, "valuation length must be n-1");
  if (!in_integral_cone(v)) {
    fail(ErrorKind::support, "Whittaker function vanishes off the cone v >= 0");
  }
  return schur_laurent(v, inverted, ctx.n()) * Complex(sqrt_delta(v, ctx));
}

}  // namespace wlab

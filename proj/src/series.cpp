#include "whittaker_lab/series.hpp"

#include "whittaker_lab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace wlab {

namespace {

std::vector<double> series_coefficients(std::span<const GeometricFactor> factors, std::size_t length) {
  std::vector<double> c(length, 0.0);
  c[0] = 1.0;
  for (const auto& f : factors) {
    if (f.rate == 0.0) continue;
    const auto k = static_cast<std::size_t>(f.power);
    // Multiply by 1/(1 - r t^k): c_N += r c_{N-k}, in increasing N.
    for (std::size_t N = k; N < length; ++N) c[N] += f.rate * c[N - k];
  }
  return c;
}

}  // namespace

double geometric_tail(std::span<const GeometricFactor> factors, int M) {
  if (M < 0) fail(ErrorKind::domain, "truncation M must be >= 0");
  double worst = 0.0;
  for (const auto& f : factors) {
    if (f.power < 1 || f.rate < 0.0) fail(ErrorKind::domain, "invalid geometric factor");
    if (f.rate == 0.0) continue;
    worst = std::max(worst, std::pow(f.rate, 1.0 / f.power));
  }
  if (worst >= 1.0) {
    fail(ErrorKind::divergence,
         "majorant series has effective ratio " + std::to_string(worst) + " >= 1");
  }
  if (worst == 0.0) return 0.0;

  const double rho = std::sqrt(worst);
  double log_g = 0.0;  // log G(1/rho)
  for (const auto& f : factors) {
    if (f.rate == 0.0) continue;
    log_g -= std::log1p(-f.rate * std::pow(rho, -f.power));
  }

  std::size_t length = static_cast<std::size_t>(M) + 64;
  for (;;) {
    const auto c = series_coefficients(factors, length);
    double head = 0.0;
    for (std::size_t N = static_cast<std::size_t>(M) + 1; N < length; ++N) head += c[N];
    const double remainder = std::exp(static_cast<double>(length) * std::log(rho) + log_g);
    if (remainder <= 1e-3 * head || remainder < 1e-300 || length > (1u << 22)) {
      return head + remainder;
    }
    length *= 2;
  }
}

}  // namespace wlab

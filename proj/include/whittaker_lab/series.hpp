#pragma once

#include <complex>
#include <span>

namespace wlab {

/// A truncated series value together with a rigorous bound on the omitted tail.
struct SeriesResult {
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// One factor (1 - rate * t^power)^{-1} of a majorant generating function.
struct GeometricFactor {
  double rate = 0.0;
  int power = 1;
};

/// Sum over N > M of the t^N coefficients of prod_f (1 - f.rate t^f.power)^{-1},
/// evaluated at t = 1. Every effective rate rate^{1/power} must be < 1.
///
/// The head is summed exactly from the power series; the remainder past the
/// computed length L is bounded by rho^{L+1} G(1/rho) with rho the square root
/// of the largest effective rate.
double geometric_tail(std::span<const GeometricFactor> factors, int M);

}  // namespace wlab

#include "whittaker_lab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace wlab::sampling {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  // 53 random bits mapped to [0, 1); avoids implementation-defined distributions
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Complex uniform_complex(Rng& rng) {
  const double re = uniform(rng, -1.0, 1.0);
  return {re, uniform(rng, -1.0, 1.0)};
}

namespace {

double random_phase(Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); }

}  // namespace

Eigen::VectorXcd torus_point(Rng& rng, int n) {
  Eigen::VectorXcd alpha(n);
  double total = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double theta = random_phase(rng);
    total += theta;
    alpha(i) = std::polar(1.0, theta);
  }
  alpha(n - 1) = std::polar(1.0, -total);
  return alpha;
}

SpectralParams random_unit_torus(Rng& rng, int n) { return SpectralParams(torus_point(rng, n), true); }

Eigen::VectorXcd well_separated(Rng& rng, int n, double min_separation) {
  for (;;) {
    Eigen::VectorXcd alpha = annulus_point(rng, n, 0.5, 1.5);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) ok = std::abs(alpha(i) - alpha(j)) >= min_separation;
    }
    if (ok) return alpha;
  }
}

Eigen::VectorXcd annulus_point(Rng& rng, int n, double r_lo, double r_hi) {
  Eigen::VectorXcd alpha(n);
  for (int i = 0; i < n; ++i) {
    const double r = uniform(rng, r_lo, r_hi);
    alpha(i) = std::polar(r, random_phase(rng));
  }
  return alpha;
}

std::vector<LatticeIndex> cube_indices(int dims, int side) {
  std::vector<LatticeIndex> out;
  LatticeIndex m(static_cast<std::size_t>(dims), 0);
  for (;;) {
    out.push_back(m);
    int k = dims - 1;
    while (k >= 0 && m[static_cast<std::size_t>(k)] == side) m[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return out;
    ++m[static_cast<std::size_t>(k)];
  }
}

std::vector<LatticeIndex> weight_indices(int dims, int max_weight) {
  std::vector<LatticeIndex> out;
  for (auto& m : cube_indices(dims, max_weight)) {
    if (partition_weight(m) <= max_weight) out.push_back(std::move(m));
  }
  return out;
}

CompactFunction random_compact(Rng& rng, const PrimeContext& ctx, int side) {
  CompactFunction h(ctx);
  for (const auto& v : cube_indices(ctx.n() - 1, side)) h.set(v, uniform_complex(rng));
  return h;
}

LaurentPoly random_schur_combination(Rng& rng, int n, int max_weight) {
  LaurentPoly H(n);
  for (const auto& m : weight_indices(n - 1, max_weight)) H += schur_laurent(m, false, n) * uniform_complex(rng);
  return H;
}

}  // namespace wlab::sampling

#pragma once

#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/schur.hpp"
#include "whittaker_lab/transform.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace wlab::sampling {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream); trial t of a suite uses stream t.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

double uniform(Rng& rng, double lo, double hi);
Complex uniform_complex(Rng& rng);

/// Unit-modulus alpha with product exactly 1 (last phase is minus the sum).
Eigen::VectorXcd torus_point(Rng& rng, int n);
SpectralParams random_unit_torus(Rng& rng, int n);

/// Moduli in [0.5, 1.5], uniform phases, pairwise distance >= min_separation.
Eigen::VectorXcd well_separated(Rng& rng, int n, double min_separation = 0.2);

/// Independent moduli in [r_lo, r_hi] and uniform phases.
Eigen::VectorXcd annulus_point(Rng& rng, int n, double r_lo, double r_hi);

/// All m with 0 <= m_k <= side, in lexicographic order.
std::vector<LatticeIndex> cube_indices(int dims, int side);
/// All m >= 0 with partition_weight(m) <= max_weight.
std::vector<LatticeIndex> weight_indices(int dims, int max_weight);

/// Uniform complex values in [-1, 1]^2 on the cube 0 <= v_k <= side.
CompactFunction random_compact(Rng& rng, const PrimeContext& ctx, int side);

/// Random complex combination of s_m(beta), partition_weight(m) <= max_weight.
LaurentPoly random_schur_combination(Rng& rng, int n, int max_weight);

}  // namespace wlab::sampling

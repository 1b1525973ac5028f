#pragma once

#include "whittaker_lab/laurent.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wlab::verify {

/// Worst case of one tolerance check accumulated over many samples.
struct Check {
  std::string label;
  double worst_error = 0.0;
  double bound = 0.0;       // allowed error at the worst sample
  long samples = 0;
  long failures = 0;

  bool passed() const noexcept { return failures == 0; }
  void record(double error, double allowed);
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // informational, never gated

  bool passed() const;
  Check& check(const std::string& label);
};

struct SchurOptions {
  std::uint64_t seed = 0;
  int trials = 100;
  std::vector<int> ns{2, 3, 4};
  int max_weight = 8;
  double tol = 1e-10;
  double invariant_tol = 1e-12;
};
SuiteReport schur_triple(const SchurOptions& o);

struct CauchyOptions {
  std::uint64_t seed = 0;
  int trials = 50;
  std::vector<int> ns{2, 3};
  int M = 60;
  double q_max = 0.6;
  double det_tol = 1e-10;
};
SuiteReport cauchy(const CauchyOptions& o);

struct StadeOptions {
  std::uint64_t seed = 0;
  int trials = 50;
  std::vector<int> ns{2, 3};
  std::vector<double> epsilons{0.05, 0.1, 0.5};
  int p = 2;
  double target_tail = 1e-9;
};
SuiteReport stade(const StadeOptions& o);

struct InversionOptions {
  std::uint64_t seed = 0;
  int trials = 4;  // random H per n
  std::vector<int> ns{2, 3, 4};
  int p = 2;
  int points = 25;
  int max_weight = 6;
  double tol = 1e-9;
};
SuiteReport inversion(const InversionOptions& o);

struct RoundTripOptions {
  std::uint64_t seed = 0;
  int trials = 20;
  std::vector<int> ns{2, 3};
  int p = 2;
  int cube = 4;
  double tol = 1e-10;
};
/// (h#)-flat = h coefficientwise on random compact functions.
SuiteReport round_trip(const RoundTripOptions& o);
/// Geometric and spectral Plancherel pairings on the same family.
SuiteReport plancherel(const RoundTripOptions& o);

struct LFactorClosedOptions {
  std::vector<int> ds{1, 2, 3, 4};
  int lambda_max = 12;
  std::vector<int> ps{2, 3, 5};
  std::vector<Complex> ss{{2.0, 0.0}, {2.5, 0.0}, {3.0, 0.5}};
  double tol = 1e-8;
  double zero_tol = 1e-10;
};
/// Closed forms against the adaptive quadrature oracle. The as-printed
/// variants are compared in notes only.
SuiteReport lfactor_closed(const LFactorClosedOptions& o);

struct IntegralRepOptions {
  std::uint64_t seed = 0;
  int trials = 5;  // seeded unit-circle phases
  std::vector<int> ds{1, 2, 3, 4};
  std::vector<int> ps{2, 3};
  Complex s{2.5, 0.0};
  double radius = 1.0;  // |alpha|; 1 is the tempered case
  int M = 80;
  double tol = 1e-8;
};
SuiteReport integral_representation(const IntegralRepOptions& o);

struct QuadratureOptions {
  std::uint64_t seed = 0;
  int trials = 20;
  std::vector<int> ns{2, 3, 4};
  int p = 2;
  int max_weight = 4;
  int points_per_h = 3;
  double tol = 1e-11;
};
SuiteReport quadrature_equivalence(const QuadratureOptions& o);

}  // namespace wlab::verify

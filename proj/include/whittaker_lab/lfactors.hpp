#pragma once

#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/series.hpp"
#include "whittaker_lab/transform.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wlab {

/// A symmetric-power local L-factor request at the GL(2) Satake parameter
/// (alpha, 1/alpha). Requires Re(s) > 1, p prime, alpha != 0.
class LFactorQuery {
 public:
  LFactorQuery(int d, Complex alpha, int p, Complex s);

  int d() const noexcept { return d_; }
  Complex alpha() const noexcept { return alpha_; }
  int p() const noexcept { return p_; }
  Complex s() const noexcept { return s_; }

 private:
  int d_;
  Complex alpha_;
  int p_;
  Complex s_;
};

/// L_p(s, Sym^d pi) = prod_{i=0}^{d} (1 - alpha^{d-2i} p^{-s})^{-1}.
Complex local_lfactor(const LFactorQuery& q);

/// h_{s,p,d}(beta) = prod_{i=0}^{d} (1 - beta^{d-2i} p^{-s})^{-1}.
Complex lfactor_h(int d, Complex beta, int p, Complex s);

/// h_{s,p,d} wrapped as a symmetric n = 2 torus evaluator. Needs Re(s) > 0.
SpectralFunction lfactor_spectral(int d, Complex s, int p);

/// One term sign * |t|^{t_s s + t_c} * p^{-p_s s} of a closed-form branch.
struct FlatTerm {
  double sign = 1.0;
  double t_s = 0.0;
  double t_c = 0.0;
  double p_s = 0.0;
};

/// Closed form of the inverse transform of h_{s,p,d} at |t_1|_p = p^{-lambda}:
/// prefactor prod_k (1 - p^{-k s})^{-1} times the branch selected by lambda mod modulus.
struct FlatProfile {
  int d = 1;
  int modulus = 1;
  std::vector<int> denominator_powers;
  std::vector<std::vector<FlatTerm>> branches;  // indexed by lambda mod modulus; empty branch = 0
};

/// Profiles derived from the residue sums, d in 1..4.
const FlatProfile& flat_profile(int d);
/// Alternative |t|-exponent forms kept for comparison; d = 3 and d = 4
/// disagree with the contour integral.
const FlatProfile& flat_profile_as_printed(int d);

Complex evaluate_flat_profile(const FlatProfile& profile, int lambda, int p, Complex s);

/// Closed-form (h_{s,p,d})-flat at |t_1| = p^{-lambda} for d in 1..4.
Complex lfactor_flat_closed(int d, int lambda, int p, Complex s);
Complex lfactor_flat_as_printed(int d, int lambda, int p, Complex s);

/// Radius used by lfactor_flat_numeric when none is given.
double default_flat_radius(int d, int lambda, int p, Complex s);

/// (h_{s,p,d})-flat by the N-point trapezoid rule for
/// p^{-lambda/2} (1/(2 pi i)) \oint h(beta) (beta^{lambda-1} - beta^{lambda+1}) dbeta
/// over |beta| = radius (default: just outside the outermost inner pole).
Complex lfactor_flat_numeric(int d, int lambda, int p, Complex s, int N,
                             std::optional<double> radius = std::nullopt);

struct AdaptiveQuadrature {
  Complex value;
  int nodes = 0;
  bool converged = false;
};

/// lfactor_flat_numeric from N = 512, doubling until successive values agree
/// to 1e-10 (relative, or at the integrand's rounding floor) or N = 8192.
AdaptiveQuadrature lfactor_flat_numeric_adaptive(int d, int lambda, int p, Complex s);

/// Both sides of the beta -> 1/beta substitution on the unit circle:
/// (trapezoid of h beta^{-(lambda+1)} (1/beta - beta) / beta,
///  trapezoid of h beta^{lambda+1} (1/beta - beta) / beta), each as (1/(2 pi i)) \oint.
std::pair<Complex, Complex> flat_change_of_variable_pair(int d, int lambda, int p, Complex s, int N);

struct IntegralRepresentationReport {
  Complex series_value;
  Complex lfactor;
  double discrepancy = 0.0;
  double tail_bound = 0.0;
  double decay_rate = 0.0;    // eta + eps0 in the declared decay
  bool closed_form = true;    // false: d > 4, numeric flat values, no closed-form cross-check
  bool diverged = false;
  std::string note;
};

/// Forward transform of lambda -> (h_{s,p,d})-flat(lambda) against W_{(alpha, 1/alpha)}
/// over lambda <= M, compared with L_p(s, Sym^d pi).
IntegralRepresentationReport verify_integral_representation(const LFactorQuery& q, int M);

}  // namespace wlab

#include "whittaker_lab/lfactors.hpp"

#include "whittaker_lab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wlab {

namespace {

void check_prime(int p) {
  if (!PrimeContext::is_prime(p)) fail(ErrorKind::context, "p = " + std::to_string(p) + " is not prime");
}

void check_degree(int d) {
  if (d < 1) fail(ErrorKind::domain, "symmetric power degree must be >= 1");
}

/// p^{-z} for complex z.
Complex p_power(int p, Complex z) { return std::exp(-z * std::log(static_cast<double>(p))); }

/// Effective radius |p^{-s}|^{1/k} of the poles beta^k = p^{-s}.
double pole_radius(int p, Complex s, int k) { return std::pow(static_cast<double>(p), -s.real() / k); }

FlatProfile make_profile(int d, bool as_printed) {
  FlatProfile f;
  f.d = d;
  constexpr double half = 0.5;
  switch (d) {
    case 1:
      f.modulus = 1;
      f.branches = {{{1.0, 1.0, half, 0.0}}};
      break;
    case 2:
      f.modulus = 2;
      f.denominator_powers = {2};
      f.branches = {{{1.0, half, half, 0.0}}, {}};
      break;
    case 3:
      f.modulus = 3;
      f.denominator_powers = {2, 4};
      if (as_printed) {
        const FlatTerm tail{-1.0, 1.0, -1.5, 0.0};
        f.branches = {{{1.0, 1.0 / 3, half, 0.0}, tail},
                      {{1.0, 1.0 / 3, -13.0 / 6, 0.0}, tail},
                      {{1.0, 1.0 / 3, -5.0 / 6, 0.0}, tail}};
      } else {
        // Residues at the cube roots of p^{-s} give p^{-s(lambda + c)/3}, c = 0, 8, 4;
        // the residue at p^{-s} gives -p^{-s(lambda+2)}.
        const FlatTerm tail{-1.0, 1.0, half, 2.0};
        f.branches = {{{1.0, 1.0 / 3, half, 0.0}, tail},
                      {{1.0, 1.0 / 3, half, 8.0 / 3}, tail},
                      {{1.0, 1.0 / 3, half, 4.0 / 3}, tail}};
      }
      break;
    case 4:
      f.modulus = 4;
      if (as_printed) {
        f.denominator_powers = {2, 3};
        const FlatTerm tail{-1.0, half, -half, 0.0};
        f.branches = {{{1.0, 0.25, half, 0.0}, tail}, {}, {{1.0, 0.25, -1.0, 0.0}, tail}, {}};
      } else {
        // The constant factor (1 - p^{-s})^{-1} of h_{s,p,4} enters the prefactor.
        f.denominator_powers = {1, 2, 3};
        const FlatTerm tail{-1.0, half, half, 1.0};
        f.branches = {{{1.0, 0.25, half, 0.0}, tail}, {}, {{1.0, 0.25, half, 1.5}, tail}, {}};
      }
      break;
    default:
      fail(ErrorKind::unsupported, "no closed form for d = " + std::to_string(d) +
                                       "; use lfactor_flat_numeric");
  }
  return f;
}

void check_flat_args(int lambda, Complex s) {
  if (lambda < 0) fail(ErrorKind::domain, "lambda must be >= 0");
  if (s.real() <= 0.0) fail(ErrorKind::domain, "Re(s) > 0 required");
}

/// Largest radius of the poles of h_{s,p,d} inside the unit circle.
double inner_pole_radius(int d, int p, Complex s) { return pole_radius(p, s, d); }

}  // namespace

LFactorQuery::LFactorQuery(int d, Complex alpha, int p, Complex s) : d_(d), alpha_(alpha), p_(p), s_(s) {
  check_degree(d);
  check_prime(p);
  if (alpha == Complex{}) fail(ErrorKind::domain, "Satake parameter must be nonzero");
  if (s.real() <= 1.0) fail(ErrorKind::domain, "Re(s) > 1 required");
}

Complex lfactor_h(int d, Complex beta, int p, Complex s) {
  const Complex x = p_power(p, s);
  Complex value(1.0);
  for (int i = 0; i <= d; ++i) {
    const Complex f = 1.0 - ipow(beta, d - 2 * i) * x;
    if (std::abs(f) < 1e-14) fail(ErrorKind::pole, "L-factor pole: beta^{d-2i} = p^s");
    value /= f;
  }
  return value;
}

Complex local_lfactor(const LFactorQuery& q) { return lfactor_h(q.d(), q.alpha(), q.p(), q.s()); }

SpectralFunction lfactor_spectral(int d, Complex s, int p) {
  check_degree(d);
  check_prime(p);
  if (s.real() <= 0.0) fail(ErrorKind::domain, "L-factor evaluator has poles on the torus unless Re(s) > 0");
  return SpectralFunction::from_evaluator(
      [d, s, p](std::span<const Complex> point) { return lfactor_h(d, point[0], p, s); },
      /*symmetric=*/true, PrimeContext(p, 2));
}

const FlatProfile& flat_profile(int d) {
  static const FlatProfile profiles[] = {make_profile(1, false), make_profile(2, false), make_profile(3, false),
                                         make_profile(4, false)};
  if (d < 1 || d > 4) make_profile(d, false);  // throws unsupported
  return profiles[d - 1];
}

const FlatProfile& flat_profile_as_printed(int d) {
  static const FlatProfile profiles[] = {make_profile(1, true), make_profile(2, true), make_profile(3, true),
                                         make_profile(4, true)};
  if (d < 1 || d > 4) make_profile(d, true);
  return profiles[d - 1];
}

Complex evaluate_flat_profile(const FlatProfile& profile, int lambda, int p, Complex s) {
  check_flat_args(lambda, s);
  check_prime(p);
  const auto& branch = profile.branches[static_cast<std::size_t>(lambda % profile.modulus)];
  if (branch.empty()) return Complex{};
  Complex prefactor(1.0);
  for (int k : profile.denominator_powers) prefactor /= 1.0 - p_power(p, static_cast<double>(k) * s);
  // Each term is sign * p^{-(a s + b)} with a = lambda t_s + p_s, b = lambda t_c.
  // Terms with equal exponents are merged first so cancelling branches give exact zeros.
  std::vector<std::pair<std::pair<double, double>, double>> merged;
  for (const auto& term : branch) {
    const double a = lambda * term.t_s + term.p_s;
    const double b = lambda * term.t_c;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) {
      return std::abs(e.first.first - a) < 1e-12 && std::abs(e.first.second - b) < 1e-12;
    });
    if (it == merged.end()) {
      merged.push_back({{a, b}, term.sign});
    } else {
      it->second += term.sign;
    }
  }
  Complex sum{};
  for (const auto& [exponent, sign] : merged) {
    if (sign != 0.0) sum += sign * p_power(p, exponent.first * s + exponent.second);
  }
  return prefactor * sum;
}

Complex lfactor_flat_closed(int d, int lambda, int p, Complex s) {
  return evaluate_flat_profile(flat_profile(d), lambda, p, s);
}

Complex lfactor_flat_as_printed(int d, int lambda, int p, Complex s) {
  return evaluate_flat_profile(flat_profile_as_printed(d), lambda, p, s);
}

double default_flat_radius(int d, int lambda, int p, Complex s) {
  check_degree(d);
  check_flat_args(lambda, s);
  // Integrating near the inner poles keeps the lambda-th coefficient above the
  // rounding floor of the integrand; the integral is radius-independent inside
  // the pole-free annulus.
  const double inner = inner_pole_radius(d, p, s);
  return std::min(1.0, inner * (1.0 + 1.0 / (lambda + 1.0)));
}

Complex lfactor_flat_numeric(int d, int lambda, int p, Complex s, int N, std::optional<double> radius) {
  check_degree(d);
  check_prime(p);
  check_flat_args(lambda, s);
  if (N < 64) fail(ErrorKind::domain, "lfactor_flat_numeric needs N >= 64");
  const double rho = radius.value_or(default_flat_radius(d, lambda, p, s));
  if (!(rho > 0.0)) fail(ErrorKind::domain, "contour radius must be positive");
  for (int k = d; k > 0; k -= 2) {
    const double inner = pole_radius(p, s, k);
    for (double pole : {inner, 1.0 / inner}) {
      if (std::abs(1.0 - pole / rho) < 1e-6) {
        fail(ErrorKind::conditioning, "pole of h_{s,p,d} within 1e-6 of the integration contour");
      }
    }
  }
  if (rho <= inner_pole_radius(d, p, s) || rho >= 1.0 / inner_pole_radius(d, p, s)) {
    fail(ErrorKind::domain, "contour radius outside the pole-free annulus");
  }

  const Complex sum = parallel::tree_sum<Complex>(static_cast<std::size_t>(N), [&](std::size_t j) {
    const Complex beta = std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(j) / N);
    const Complex power = ipow(beta, lambda);
    // (1/(2 pi i)) \oint f dbeta = mean of f(beta) beta over the nodes
    return lfactor_h(d, beta, p, s) * (power - power * beta * beta);
  });
  return std::pow(static_cast<double>(p), -0.5 * lambda) * sum / static_cast<double>(N);
}

AdaptiveQuadrature lfactor_flat_numeric_adaptive(int d, int lambda, int p, Complex s) {
  const double rho = default_flat_radius(d, lambda, p, s);
  // Rounding floor: magnitude of the summands the trapezoid rule averages.
  const double floor_scale = [&] {
    double acc = 0.0;
    constexpr int probe = 64;
    for (int j = 0; j < probe; ++j) {
      const Complex beta = std::polar(rho, 2.0 * std::numbers::pi * j / probe);
      acc += std::abs(lfactor_h(d, beta, p, s)) * (std::pow(rho, lambda) + std::pow(rho, lambda + 2));
    }
    return std::pow(static_cast<double>(p), -0.5 * lambda) * acc / probe;
  }();

  AdaptiveQuadrature out;
  out.nodes = 512;
  out.value = lfactor_flat_numeric(d, lambda, p, s, out.nodes, rho);
  while (out.nodes < 8192) {
    const int next = out.nodes * 2;
    const Complex refined = lfactor_flat_numeric(d, lambda, p, s, next, rho);
    const double change = std::abs(refined - out.value);
    out.value = refined;
    out.nodes = next;
    if (change <= 1e-10 * std::abs(refined) || change <= 1e-14 * floor_scale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::pair<Complex, Complex> flat_change_of_variable_pair(int d, int lambda, int p, Complex s, int N) {
  check_degree(d);
  check_prime(p);
  check_flat_args(lambda, s);
  if (N < 64) fail(ErrorKind::domain, "quadrature needs N >= 64");
  auto mean = [&](int sign) {
    return parallel::tree_sum<Complex>(static_cast<std::size_t>(N), [&](std::size_t j) {
             const Complex beta = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / N);
             // integrand h beta^{sign(lambda+1)} (1/beta - beta) / beta, times beta from dbeta
             return lfactor_h(d, beta, p, s) * ipow(beta, sign * (lambda + 1)) * (1.0 / beta - beta);
           }) /
           static_cast<double>(N);
  };
  return {mean(-1), mean(+1)};
}

IntegralRepresentationReport verify_integral_representation(const LFactorQuery& q, int M) {
  if (M < 0) fail(ErrorKind::domain, "truncation M must be >= 0");
  const int d = q.d();
  const int p = q.p();
  const Complex s = q.s();
  const PrimeContext ctx(p, 2);
  const double log_p = std::log(static_cast<double>(p));

  IntegralRepresentationReport report;
  report.lfactor = local_lfactor(q);
  report.closed_form = d <= 4;

  std::vector<Complex> flat(static_cast<std::size_t>(M) + 1);
  for (int lambda = 0; lambda <= M; ++lambda) {
    flat[static_cast<std::size_t>(lambda)] = report.closed_form
                                                 ? lfactor_flat_closed(d, lambda, p, s)
                                                 : lfactor_flat_numeric_adaptive(d, lambda, p, s).value;
  }

  // Declared decay |flat(lambda)| <= C p^{-lambda/2} p^{-rate lambda}.
  double rate = 0.0;
  double C = 0.0;
  if (report.closed_form) {
    const FlatProfile& profile = flat_profile(d);
    rate = std::numeric_limits<double>::infinity();
    Complex prefactor(1.0);
    for (int k : profile.denominator_powers) prefactor /= 1.0 - p_power(p, static_cast<double>(k) * s);
    for (const auto& branch : profile.branches) {
      double branch_sum = 0.0;
      for (const auto& t : branch) {
        rate = std::min(rate, t.t_s * s.real() + t.t_c - 0.5);
        branch_sum += std::exp(-t.p_s * s.real() * log_p);
      }
      C = std::max(C, branch_sum);
    }
    C *= std::abs(prefactor);
  } else {
    rate = s.real() / d;
    for (int lambda = 0; lambda <= M; ++lambda) {
      C = std::max(C, std::abs(flat[static_cast<std::size_t>(lambda)]) * std::exp(lambda * (0.5 + rate) * log_p));
    }
    C *= 2.0;
    report.note = "no closed-form cross-check; decay constant estimated from computed values";
  }
  report.decay_rate = rate;

  const double eta = std::abs(std::log(std::abs(q.alpha()))) / log_p;
  const double eps0 = rate - eta;
  if (!(eps0 > 0.0)) {
    report.diverged = true;
    report.note = "declared decay rate " + std::to_string(rate) + " does not exceed eta = " + std::to_string(eta) +
                  "; forward series not certified to converge";
    return report;
  }

  const SpectralParams alpha(Eigen::Vector2cd(q.alpha(), 1.0 / q.alpha()), /*unit_determinant=*/true);
  const SeriesResult series = forward_transform_series(
      [&](const LatticeIndex& v) { return flat[static_cast<std::size_t>(v[0])]; }, alpha,
      DecayBound{C, eta, eps0}, M, ctx);
  report.series_value = series.value;
  report.tail_bound = series.tail_bound;
  report.discrepancy = std::abs(series.value - report.lfactor);
  if (!std::isfinite(report.discrepancy) || !std::isfinite(report.tail_bound)) {
    report.diverged = true;
    report.note = "non-finite partial sum or tail";
  }
  return report;
}

}  // namespace wlab

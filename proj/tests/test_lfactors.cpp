#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kind_of.hpp"
#include "whittaker_lab/lfactors.hpp"
#include "whittaker_lab/sampling.hpp"

#include <cmath>
#include <numbers>

using namespace wlab;

TEST_CASE("local L-factor") {
  CHECK(std::abs(lfactor_h(1, 1.0, 2, 1.0) - 4.0) < 1e-14);
  CHECK(std::abs(lfactor_h(2, 1.0, 2, 1.0) - 8.0) < 1e-14);
  CHECK(std::abs(local_lfactor(LFactorQuery(3, std::polar(1.0, 0.4), 5, 60.0)) - 1.0) < 1e-15);
  CHECK(std::abs(local_lfactor(LFactorQuery(2, 1.0, 2, 2.0)) - std::pow(0.75, -3)) < 1e-13);

  SUBCASE("query validation") {
    CHECK(kind_of([] { LFactorQuery q(1, 1.0, 2, 1.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { LFactorQuery q(1, 0.0, 2, 2.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { LFactorQuery q(1, 1.0, 6, 2.0); }) == ErrorKind::context);
    CHECK(kind_of([] { LFactorQuery q(0, 1.0, 2, 2.0); }) == ErrorKind::domain);
  }
  SUBCASE("pole") {
    CHECK(kind_of([] { (void)local_lfactor(LFactorQuery(1, 4.0, 2, 2.0)); }) == ErrorKind::pole);
  }
  SUBCASE("property: invariant under alpha -> 1/alpha") {
    auto rng = sampling::make_stream(71, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 1 + trial % 6;
      const Complex alpha = std::polar(sampling::uniform(rng, 0.8, 1.25), sampling::uniform(rng, 0.0, 6.28));
      const Complex s(sampling::uniform(rng, 1.5, 4.0), sampling::uniform(rng, -2.0, 2.0));
      const Complex a = local_lfactor(LFactorQuery(d, alpha, 3, s));
      const Complex b = local_lfactor(LFactorQuery(d, 1.0 / alpha, 3, s));
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
  }
}

TEST_CASE("spectral evaluator") {
  const Complex s(2.0, 0.3);
  const SpectralFunction H = lfactor_spectral(1, s, 3);
  const Complex one(1.0);
  CHECK(std::abs(H(std::span<const Complex>(&one, 1)) - 1.0 / ((1.0 - std::pow(3.0, -s)) * (1.0 - std::pow(3.0, -s)))) <
        1e-14);
  CHECK(H.symmetric());
  CHECK_FALSE(H.is_exact());
  CHECK(kind_of([] { (void)lfactor_spectral(2, Complex(0.0, 1.0), 2); }) == ErrorKind::domain);

  SUBCASE("property: invariant under beta -> 1/beta on the torus") {
    auto rng = sampling::make_stream(73, 0);
    for (int d = 1; d <= 5; ++d) {
      const SpectralFunction h = lfactor_spectral(d, 2.5, 2);
      for (int t = 0; t < 20; ++t) {
        const Complex b = std::polar(1.0, sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi));
        const Complex binv = 1.0 / b;
        const Complex x = h(std::span<const Complex>(&b, 1));
        CHECK(std::abs(x - h(std::span<const Complex>(&binv, 1))) <= 1e-12 * std::abs(x));
      }
    }
  }
  SUBCASE("matches the local factor at beta = alpha") {
    const Complex alpha = std::polar(1.0, 0.7);
    const SpectralFunction h = lfactor_spectral(3, 2.5, 5);
    CHECK(std::abs(h(std::span<const Complex>(&alpha, 1)) - local_lfactor(LFactorQuery(3, alpha, 5, 2.5))) < 1e-14);
  }
}

TEST_CASE("closed forms") {
  CHECK(std::abs(lfactor_flat_closed(1, 2, 2, 1.0) - 0.125) < 1e-15);
  CHECK(std::abs(lfactor_flat_closed(1, 0, 2, 1.0) - 1.0) < 1e-15);
  for (int p : {2, 3, 5}) {
    for (int lambda : {1, 3, 5, 7, 11}) {
      CHECK(lfactor_flat_closed(2, lambda, p, 2.5) == Complex(0.0));
      CHECK(lfactor_flat_closed(4, lambda, p, Complex(3.0, 0.5)) == Complex(0.0));
    }
  }
  const double s = 2.0;
  CHECK(std::abs(lfactor_flat_closed(2, 2, 3, s) - std::pow(3.0, -(s + 1.0)) / (1.0 - std::pow(3.0, -2 * s))) < 1e-15);

  SUBCASE("unsupported degree") {
    CHECK(kind_of([] { (void)lfactor_flat_closed(5, 0, 2, 2.0); }) == ErrorKind::unsupported);
    CHECK(kind_of([] { (void)lfactor_flat_closed(0, 0, 2, 2.0); }).has_value());
    CHECK(kind_of([] { (void)lfactor_flat_closed(1, -1, 2, 2.0); }) == ErrorKind::domain);
  }
  SUBCASE("profiles cover every residue class") {
    for (int d = 1; d <= 4; ++d) {
      CHECK(flat_profile(d).modulus == d);
      CHECK(static_cast<int>(flat_profile(d).branches.size()) == d);
      CHECK(flat_profile_as_printed(d).modulus == d);
    }
  }
  SUBCASE("cancelling branches vanish exactly") {
    for (int p : {2, 3, 5}) CHECK(lfactor_flat_closed(3, 1, p, 2.5) == Complex(0.0));
    CHECK(lfactor_flat_closed(3, 4, 2, 2.5) != Complex(0.0));
    CHECK(lfactor_flat_closed(4, 2, 3, 2.0) == Complex(0.0));
  }
  SUBCASE("printed cubic form at lambda = 1") {
    const double printed = (std::pow(2.0, 4.0 / 3.0) - 0.5) / ((1.0 - std::pow(2.0, -5)) * (1.0 - std::pow(2.0, -10)));
    CHECK(std::abs(lfactor_flat_as_printed(3, 1, 2, 2.5) - printed) < 1e-13);
    CHECK(printed == doctest::Approx(2.0870).epsilon(1e-4));
    CHECK(std::abs(lfactor_flat_numeric(3, 1, 2, 2.5, 1024)) < 1e-10);
  }
  SUBCASE("printed forms agree where the derivation is routine") {
    for (int lambda = 0; lambda < 8; ++lambda) {
      CHECK(std::abs(lfactor_flat_as_printed(1, lambda, 3, 2.0) - lfactor_flat_closed(1, lambda, 3, 2.0)) < 1e-15);
      CHECK(std::abs(lfactor_flat_as_printed(2, lambda, 3, 2.0) - lfactor_flat_closed(2, lambda, 3, 2.0)) < 1e-15);
    }
  }
}

TEST_CASE("numeric oracle") {
  CHECK(std::abs(lfactor_flat_numeric(1, 0, 2, 1.0, 256) - 1.0) < 1e-10);
  CHECK(std::abs(lfactor_flat_numeric(4, 1, 2, 2.5, 512)) < 1e-10);

  SUBCASE("degree five self-consistency") {
    const Complex a = lfactor_flat_numeric(5, 0, 3, 3.0, 512);
    const Complex b = lfactor_flat_numeric(5, 0, 3, 3.0, 1024);
    CHECK(std::isfinite(a.real()));
    CHECK(std::abs(a - b) < 1e-9);
  }
  SUBCASE("contour near a pole") {
    CHECK(kind_of([] { (void)lfactor_flat_numeric(1, 0, 2, 2.0, 256, 0.25); }) == ErrorKind::conditioning);
    CHECK(kind_of([] { (void)lfactor_flat_numeric(1, 0, 2, 2.0, 256, 0.1); }) == ErrorKind::domain);
    CHECK(kind_of([] { (void)lfactor_flat_numeric(1, 0, 2, 2.0, 32); }) == ErrorKind::domain);
  }
  SUBCASE("unit circle contour agrees with the default radius") {
    CHECK(std::abs(lfactor_flat_numeric(2, 4, 3, 2.0, 1024, 1.0) - lfactor_flat_numeric(2, 4, 3, 2.0, 1024)) < 1e-12);
  }
  SUBCASE("adaptive doubling") {
    const AdaptiveQuadrature q = lfactor_flat_numeric_adaptive(3, 5, 2, 2.5);
    CHECK(q.converged);
    CHECK(q.nodes >= 512);
    CHECK(q.nodes <= 8192);
    CHECK(std::abs(q.value - lfactor_flat_closed(3, 5, 2, 2.5)) < 1e-10);
  }
}

TEST_CASE("property: closed forms agree with the numeric oracle") {
  const Complex svals[] = {2.0, 2.5, Complex(3.0, 0.5)};
  for (int d = 1; d <= 4; ++d) {
    for (int p : {2, 3, 5}) {
      for (const Complex& s : svals) {
        for (int lambda = 0; lambda <= 12; ++lambda) {
          const Complex closed = lfactor_flat_closed(d, lambda, p, s);
          const Complex numeric = lfactor_flat_numeric(d, lambda, p, s, 1024);
          CHECK(std::abs(closed - numeric) <= 1e-8 * std::max(std::abs(closed), 1e-300) + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("property: change of variable identity") {
  for (int d = 1; d <= 5; ++d) {
    for (int lambda = 0; lambda < 6; ++lambda) {
      const auto [lhs, rhs] = flat_change_of_variable_pair(d, lambda, 2, 2.5, 512);
      CHECK(std::abs(lhs + rhs) < 1e-10);
    }
  }
}

TEST_CASE("integral representation") {
  SUBCASE("degree one") {
    const auto r = verify_integral_representation(LFactorQuery(1, std::polar(1.0, std::numbers::pi / 7), 2, 1.5), 80);
    CHECK(r.discrepancy < 1e-10);
    CHECK(r.discrepancy <= r.tail_bound + 1e-12);
    CHECK(r.closed_form);
    CHECK_FALSE(r.diverged);
  }
  SUBCASE("degree two") {
    const auto r = verify_integral_representation(LFactorQuery(2, std::polar(1.0, 1.1), 3, 2.0), 80);
    CHECK(r.discrepancy < 1e-9);
  }
  SUBCASE("degrees three and four") {
    for (int d : {3, 4}) {
      for (int p : {2, 3}) {
        const auto r = verify_integral_representation(LFactorQuery(d, std::polar(1.0, 0.3 * d), p, 2.5), 80);
        CHECK(r.discrepancy < 1e-8);
        CHECK(r.discrepancy <= r.tail_bound + 1e-12);
      }
    }
  }
  SUBCASE("degree five has no closed-form cross-check") {
    const auto r = verify_integral_representation(LFactorQuery(5, std::polar(1.0, 0.5), 3, 3.0), 40);
    CHECK_FALSE(r.closed_form);
    CHECK_FALSE(r.note.empty());
    CHECK(r.discrepancy < 1e-8);
  }
  SUBCASE("off-circle parameter beyond the decay rate is reported as divergent") {
    const auto r = verify_integral_representation(LFactorQuery(4, 2.0, 2, 1.5), 40);
    CHECK(r.diverged);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kind_of.hpp"
#include "whittaker_lab/sampling.hpp"
#include "whittaker_lab/whittaker.hpp"

#include <cmath>

using namespace wlab;

TEST_CASE("prime context") {
  CHECK(PrimeContext::is_prime(2));
  CHECK(PrimeContext::is_prime(97));
  CHECK_FALSE(PrimeContext::is_prime(1));
  CHECK_FALSE(PrimeContext::is_prime(4));
  CHECK_FALSE(PrimeContext::is_prime(-3));
  CHECK(kind_of([] { PrimeContext c(4, 2); }) == ErrorKind::context);
  CHECK(kind_of([] { PrimeContext c(2, 1); }) == ErrorKind::context);
}

TEST_CASE("modular character") {
  CHECK(delta({3}, PrimeContext(2, 2)) == 0.125);
  CHECK(delta_exponent({1, 2}, PrimeContext(5, 3)) == 6);
  CHECK(delta({1, 2}, PrimeContext(5, 3)) == doctest::Approx(std::pow(5.0, -6)).epsilon(1e-15));
  CHECK(sqrt_delta({1}, PrimeContext(2, 2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(delta_exponent({1, 0, 1}, PrimeContext(3, 4)) == 6);
  CHECK(kind_of([] { (void)delta({1, 1}, PrimeContext(2, 2)); }) == ErrorKind::dimension);
}

TEST_CASE("Whittaker values") {
  const PrimeContext ctx(2, 2);
  CHECK(std::abs(whittaker_eval(SpectralParams{1.0, 1.0}, {0}, ctx) - 1.0) < 1e-15);
  CHECK(std::abs(whittaker_eval(SpectralParams{1.0, 1.0}, {1}, ctx) - std::sqrt(2.0)) < 1e-14);

  SUBCASE("vanishes off the cone") {
    CHECK(whittaker_eval(SpectralParams{3.0, 0.5}, {-1}, ctx) == Complex(0.0));
    CHECK(whittaker_eval(SpectralParams{1.0, 2.0, 3.0}, {2, -1}, PrimeContext(3, 3)) == Complex(0.0));
  }
  SUBCASE("dimension checks") {
    CHECK(kind_of([&] { (void)whittaker_eval(SpectralParams{1.0, 1.0, 1.0}, {0}, ctx); }) == ErrorKind::dimension);
    CHECK(kind_of([&] { (void)whittaker_eval(SpectralParams{1.0, 1.0}, {0, 0}, ctx); }) == ErrorKind::dimension);
  }
}

TEST_CASE("Whittaker Laurent form") {
  const LaurentPoly w = whittaker_laurent({2}, true, PrimeContext(3, 2));
  REQUIRE(w.size() == 3);
  CHECK(std::abs(w.coefficient({-2}) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(w.coefficient({0}) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(w.coefficient({2}) - 1.0 / 3.0) < 1e-15);
  CHECK(kind_of([] { (void)whittaker_laurent({-1}, false, PrimeContext(3, 2)); }) == ErrorKind::support);
}

TEST_CASE("property: Laurent form agrees with direct evaluation") {
  for (int n : {2, 3, 4}) {
    const PrimeContext ctx(3, n);
    auto rng = sampling::make_stream(41, static_cast<std::uint64_t>(n));
    for (const LatticeIndex& v : sampling::cube_indices(n - 1, 2)) {
      const Eigen::VectorXcd point = sampling::torus_point(rng, n);
      const std::span<const Complex> head(point.data(), static_cast<std::size_t>(n - 1));
      const Complex direct = whittaker_value(point, v, ctx);
      CHECK(std::abs(evaluate(whittaker_laurent(v, false, ctx), head) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("property: W is symmetric in alpha") {
  auto rng = sampling::make_stream(43, 0);
  const PrimeContext ctx(5, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd a = sampling::well_separated(rng, 3);
    const LatticeIndex v{static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
    const Complex w = whittaker_value(a, v, ctx);
    std::swap(a(0), a(2));
    CHECK(std::abs(whittaker_value(a, v, ctx) - w) <= 1e-12 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("property: GL(2) values satisfy the Hecke recursion") {
  // s_{k+1} = (a1 + a2) s_k - a1 a2 s_{k-1}
  auto rng = sampling::make_stream(47, 0);
  const PrimeContext ctx(2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXcd a = sampling::well_separated(rng, 2);
    for (int k = 1; k < 10; ++k) {
      const Complex lhs = whittaker_value(a, {k + 1}, ctx) / sqrt_delta({k + 1}, ctx);
      const Complex rhs = (a(0) + a(1)) * whittaker_value(a, {k}, ctx) / sqrt_delta({k}, ctx) -
                          a(0) * a(1) * whittaker_value(a, {k - 1}, ctx) / sqrt_delta({k - 1}, ctx);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::pow(1.5, k + 1) * (k + 2));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kind_of.hpp"
#include "whittaker_lab/laurent.hpp"
#include "whittaker_lab/error.hpp"
#include "whittaker_lab/sampling.hpp"

#include <cmath>
#include <numbers>

using namespace wlab;

namespace {

LaurentPoly beta(int rank, int axis, int power = 1) {
  LaurentPoly::Exponent e(static_cast<std::size_t>(rank - 1), 0);
  e[static_cast<std::size_t>(axis)] = power;
  return LaurentPoly::monomial(rank, e);
}

LaurentPoly one(int rank) { return LaurentPoly::constant(rank, 1.0); }

LaurentPoly random_poly(sampling::Rng& rng, int rank, int spread, int terms) {
  LaurentPoly a(rank);
  for (int t = 0; t < terms; ++t) {
    LaurentPoly::Exponent e(static_cast<std::size_t>(rank - 1));
    for (int& x : e) x = static_cast<int>(rng() % static_cast<unsigned>(2 * spread + 1)) - spread;
    a += LaurentPoly::monomial(rank, e, sampling::uniform_complex(rng));
  }
  return a;
}

/// Mean of a over the N^{rank-1} grid of roots of unity.
Complex grid_average(const LaurentPoly& a, int N) {
  const int dims = a.variables();
  std::size_t count = 1;
  for (int k = 0; k < dims; ++k) count *= static_cast<std::size_t>(N);
  Complex acc{};
  std::vector<Complex> point(static_cast<std::size_t>(dims));
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rest = flat;
    for (int k = 0; k < dims; ++k) {
      point[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(rest % N) / N);
      rest /= static_cast<std::size_t>(N);
    }
    acc += evaluate(a, std::span<const Complex>(point));
  }
  return acc / static_cast<double>(count);
}

}  // namespace

TEST_CASE("addition") {
  SUBCASE("additive inverse leaves the empty polynomial") {
    const LaurentPoly sum = beta(2, 0) + beta(2, 0) * Complex(-1.0);
    CHECK(sum.empty());
  }
  SUBCASE("disjoint supports") {
    const LaurentPoly sum = one(2) + beta(2, 0);
    REQUIRE(sum.size() == 2);
    CHECK(sum.coefficient({0}) == Complex(1.0));
    CHECK(sum.coefficient({1}) == Complex(1.0));
  }
  SUBCASE("coefficients merge") {
    const LaurentPoly sum = (beta(2, 0) + beta(2, 0, -1)) + beta(2, 0, -1);
    REQUIRE(sum.size() == 2);
    CHECK(sum.coefficient({1}) == Complex(1.0));
    CHECK(sum.coefficient({-1}) == Complex(2.0));
  }
  SUBCASE("rank mismatch") {
    try {
      (void)(one(2) + one(3));
      FAIL("expected a dimension error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::dimension);
    }
  }
  SUBCASE("tiny relative remainders are pruned") {
    const LaurentPoly a = beta(2, 0) * Complex(1.0 + 1e-16) + beta(2, 0) * Complex(-1.0);
    CHECK(a.empty());
  }
}

TEST_CASE("multiplication") {
  SUBCASE("difference of squares") {
    const LaurentPoly prod = (beta(2, 0) - beta(2, 0, -1)) * (beta(2, 0) + beta(2, 0, -1));
    REQUIRE(prod.size() == 2);
    CHECK(prod.coefficient({2}) == Complex(1.0));
    CHECK(prod.coefficient({-2}) == Complex(-1.0));
  }
  SUBCASE("scalar identity") {
    const LaurentPoly prod = LaurentPoly::constant(2, 7.0) * one(2);
    REQUIRE(prod.size() == 1);
    CHECK(prod.coefficient({0}) == Complex(7.0));
  }
  SUBCASE("binomial square") {
    const LaurentPoly b = one(2) + beta(2, 0);
    const LaurentPoly sq = b * b;
    REQUIRE(sq.size() == 3);
    CHECK(sq.coefficient({0}) == Complex(1.0));
    CHECK(sq.coefficient({1}) == Complex(2.0));
    CHECK(sq.coefficient({2}) == Complex(1.0));
  }
  SUBCASE("support is the Minkowski sum") {
    const LaurentPoly a = beta(3, 0) + beta(3, 1, -2);
    const LaurentPoly b = one(3) + beta(3, 1, 3);
    const LaurentPoly prod = a * b;
    CHECK(prod.size() == 4);
    CHECK(prod.coefficient({1, 3}) == Complex(1.0));
    CHECK(prod.coefficient({0, 1}) == Complex(1.0));
  }
  SUBCASE("rank mismatch") {
    CHECK_THROWS_AS((void)(one(2) * one(4)), Error);
  }
}

TEST_CASE("constant term") {
  CHECK(constant_term(beta(2, 0) + LaurentPoly::constant(2, 3.0) + beta(2, 0, -1)) == Complex(3.0));
  CHECK(constant_term(beta(3, 0) * beta(3, 1, -1)) == Complex(0.0));
  CHECK(constant_term(LaurentPoly(2)) == Complex(0.0));

  SUBCASE("orthogonality value at n=2, m=m'=(1)") {
    // s_1(beta) = beta + 1/beta; Vandermonde product (beta - 1/beta)(1/beta - beta)
    const LaurentPoly s1 = beta(2, 0) + beta(2, 0, -1);
    const LaurentPoly vdm = (beta(2, 0) - beta(2, 0, -1)) * (beta(2, 0, -1) - beta(2, 0));
    const LaurentPoly integrand = s1 * s1.inverted() * vdm * Complex(0.5);
    CHECK(constant_term(integrand).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(grid_average(integrand, 16) - 1.0) < 1e-14);
  }

  SUBCASE("product form agrees with the expanded product") {
    auto rng = sampling::make_stream(3, 0);
    const LaurentPoly a = random_poly(rng, 3, 4, 12);
    const LaurentPoly b = random_poly(rng, 3, 4, 12);
    CHECK(std::abs(constant_term_of_product(a, b) - constant_term(a * b)) < 1e-14);
  }
}

TEST_CASE("evaluation") {
  const Complex two(2.0);
  CHECK(evaluate(beta(2, 0, 2), std::span<const Complex>(&two, 1)) == Complex(4.0));
  CHECK(evaluate(LaurentPoly(2), std::span<const Complex>(&two, 1)) == Complex(0.0));

  const Complex i(0.0, 1.0);
  const LaurentPoly p = one(2) + beta(2, 0) + beta(2, 0, -1);
  CHECK(std::abs(evaluate(p, std::span<const Complex>(&i, 1)) - 1.0) < 1e-15);

  SUBCASE("zero coordinate with a negative power") {
    const Complex zero(0.0);
    try {
      (void)evaluate(p, std::span<const Complex>(&zero, 1));
      FAIL("expected an evaluation error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::evaluation);
    }
    CHECK(evaluate(one(2) + beta(2, 0), std::span<const Complex>(&zero, 1)) == Complex(1.0));
  }
  SUBCASE("point length must match") {
    const std::vector<Complex> point{1.0, 1.0};
    CHECK_THROWS_AS((void)evaluate(p, std::span<const Complex>(point)), Error);
  }
}

TEST_CASE("alphabet variables") {
  const LaurentPoly last = alphabet_variable(4, 3);
  CHECK(last.coefficient({-1, -1, -1}) == Complex(1.0));
  const LaurentPoly product = alphabet_variable(4, 0) * alphabet_variable(4, 1) * alphabet_variable(4, 2) * last;
  CHECK(product.size() == 1);
  CHECK(product.coefficient({0, 0, 0}) == Complex(1.0));
}

TEST_CASE("spread and exponent bounds") {
  const LaurentPoly a = beta(3, 0, 2) * beta(3, 1, -3) + beta(3, 1, 1);
  CHECK(a.max_abs_exponent(0) == 2);
  CHECK(a.max_abs_exponent(1) == 3);
  CHECK(a.spread() == 5);
  CHECK(alphabet_variable(3, 2).spread() == 1);
}

TEST_CASE("conjugation by exponent negation matches pointwise conjugation on the torus") {
  auto rng = sampling::make_stream(11, 0);
  const LaurentPoly a = random_poly(rng, 3, 3, 10);
  const LaurentPoly c = a.conj_inverted();
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd point = sampling::torus_point(rng, 3);
    const std::span<const Complex> head(point.data(), 2);
    CHECK(std::abs(evaluate(c, head) - std::conj(evaluate(a, head))) < 1e-13);
  }
}

TEST_CASE("property: torus grid average equals the constant term") {
  for (int rank : {2, 3, 4}) {
    auto rng = sampling::make_stream(5, static_cast<std::uint64_t>(rank));
    for (int trial = 0; trial < 10; ++trial) {
      const LaurentPoly a = random_poly(rng, rank, 3, 15);
      int spread = 0;
      for (int axis = 0; axis < rank - 1; ++axis) spread = std::max(spread, 2 * a.max_abs_exponent(axis));
      const Complex ct = constant_term(a);
      const double scale = std::max(std::abs(ct), a.max_abs_coefficient());
      CHECK(std::abs(grid_average(a, spread + 1) - ct) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("property: multiplication commutes") {
  auto rng = sampling::make_stream(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const LaurentPoly a = random_poly(rng, 3, 3, 8);
    const LaurentPoly b = random_poly(rng, 3, 3, 8);
    const LaurentPoly ab = a * b;
    const LaurentPoly ba = b * a;
    REQUIRE(ab.same_support(ba));
    for (const auto& [e, c] : ab.terms()) CHECK(std::abs(c - ba.coefficient(e)) <= 1e-13 * std::abs(c));
  }
}

TEST_CASE("property: constant term is linear") {
  auto rng = sampling::make_stream(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const LaurentPoly a = random_poly(rng, 4, 2, 10);
    const LaurentPoly b = random_poly(rng, 4, 2, 10);
    const Complex c = sampling::uniform_complex(rng);
    CHECK(std::abs(constant_term(a + c * b) - (constant_term(a) + c * constant_term(b))) < 1e-14);
  }
}

TEST_CASE("ipow") {
  CHECK(ipow(Complex(2.0), 10) == Complex(1024.0));
  CHECK(ipow(Complex(2.0), -2) == Complex(0.25));
  CHECK(ipow(Complex(0.0, 1.0), 3) == Complex(0.0, -1.0));
  CHECK(ipow(Complex(5.0), 0) == Complex(1.0));
}

TEST_CASE("construction guards") {
  CHECK(kind_of([] { (void)LaurentPoly::monomial(2, {512}); }) == ErrorKind::guard);
  CHECK(kind_of([] { (void)LaurentPoly::monomial(3, {1}); }) == ErrorKind::dimension);
  CHECK(kind_of([] { (void)alphabet_variable(3, 3); }) == ErrorKind::dimension);
  CHECK(LaurentPoly::monomial(2, {3}, 0.0).empty());
  CHECK(LaurentPoly::monomial(2, {511}).coefficient({511}) == Complex(1.0));
}

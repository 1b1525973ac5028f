#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kind_of.hpp"
#include "whittaker_lab/sampling.hpp"
#include "whittaker_lab/schur.hpp"

#include <cmath>

using namespace wlab;

namespace {

Eigen::VectorXcd vec(std::initializer_list<Complex> xs) {
  return Eigen::Map<const Eigen::VectorXcd>(xs.begin(), static_cast<Eigen::Index>(xs.size()));
}

/// s_m(|alpha|), which dominates |s_m(alpha)| term by term.
double majorant(const LatticeIndex& m, const Eigen::VectorXcd& alpha) {
  return std::abs(schur_jacobi_trudi(m, Eigen::VectorXcd(alpha.cwiseAbs().cast<Complex>())));
}

}  // namespace

TEST_CASE("index to partition") {
  CHECK(m_to_partition({2, 1, 3}) == Partition{6, 3, 2, 0});
  CHECK(m_to_partition({0}) == Partition{0, 0});
  CHECK(m_to_partition({1, 0}) == Partition{1, 1, 0});
  CHECK(partition_weight({2, 1, 3}) == 11);
  CHECK(partition_weight({1, 1}) == 3);
}

TEST_CASE("small Schur values") {
  SUBCASE("h2 in two variables") {
    const Eigen::VectorXcd a = vec({2.0, 0.5});
    CHECK(std::abs(schur_jacobi_trudi({2}, a) - 5.25) < 1e-14);
    CHECK(std::abs(schur_bialternant({2}, a) - 5.25) < 1e-14);
    CHECK(std::abs(schur_tableau_oracle({2}, a) - 5.25) < 1e-14);
  }
  SUBCASE("e2 of three ones") {
    const Eigen::VectorXcd a = vec({1.0, 1.0, 1.0});
    CHECK(std::abs(schur_jacobi_trudi({1, 0}, a) - 3.0) < 1e-14);
    CHECK(std::abs(schur_tableau_oracle({1, 0}, a) - 3.0) < 1e-14);
  }
  SUBCASE("h3 of two ones") {
    CHECK(std::abs(schur_jacobi_trudi({3}, vec({1.0, 1.0})) - 4.0) < 1e-14);
  }
  SUBCASE("shape (2,1) at three ones counts eight tableaux") {
    const Eigen::VectorXcd a = vec({1.0, 1.0, 1.0});
    CHECK(std::abs(schur_jacobi_trudi({1, 1}, a) - 8.0) < 1e-13);
    CHECK(std::abs(schur_tableau_oracle({1, 1}, a) - 8.0) < 1e-14);
  }
  SUBCASE("zero index is one") {
    CHECK(schur_jacobi_trudi({0, 0, 0}, vec({0.3, 2.0, 5.0, 7.0})) == Complex(1.0));
  }
  SUBCASE("real scalar type") {
    Eigen::VectorXd a(2);
    a << 2.0, 0.5;
    CHECK(schur_jacobi_trudi(LatticeIndex{2}, a) == doctest::Approx(5.25));
  }
}

TEST_CASE("validation") {
  CHECK(kind_of([] { (void)schur_jacobi_trudi({1, 1}, vec({1.0, 2.0})); }) == ErrorKind::dimension);
  CHECK(kind_of([] { (void)schur_jacobi_trudi({-1}, vec({1.0, 2.0})); }) == ErrorKind::domain);
  CHECK(kind_of([] { (void)schur_bialternant({1}, vec({1.0, 1.0 + 1e-8})); }) == ErrorKind::conditioning);
  CHECK(kind_of([] { (void)schur_tableau_oracle({13}, vec({1.0, 2.0})); }) == ErrorKind::guard);
  CHECK(kind_of([] { (void)schur_tableau_oracle({0, 0, 0, 0, 0}, vec({1, 1, 1, 1, 1, 1})); }) == ErrorKind::guard);
  CHECK(kind_of([] { (void)schur_laurent({41}, false, 2); }) == ErrorKind::guard);
  CHECK(kind_of([] { SpectralParams a{1.0, 0.0}; }) == ErrorKind::domain);
  CHECK(kind_of([] { SpectralParams a{2.0, 2.0}; (void)a; SpectralParams b({2.0, 2.0}, true); }) == ErrorKind::domain);
  CHECK(kind_of([] { SpectralParams a{1.0}; }) == ErrorKind::dimension);
  CHECK_FALSE(kind_of([] { SpectralParams a({2.0, 0.5}, true); }).has_value());
}

TEST_CASE("repeated parameters stay finite under Jacobi-Trudi") {
  const Eigen::VectorXcd a = vec({0.7, 0.7, 0.7});
  const Complex jt = schur_jacobi_trudi({2, 1}, a);
  CHECK(std::abs(jt - schur_tableau_oracle({2, 1}, a)) < 1e-12);
}

TEST_CASE("property: three Schur methods agree") {
  for (int n : {2, 3, 4}) {
    auto rng = sampling::make_stream(21, static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::VectorXcd a = sampling::well_separated(rng, n);
      for (const LatticeIndex& m : sampling::weight_indices(n - 1, 8)) {
        const double scale = majorant(m, a);
        const Complex jt = schur_jacobi_trudi(m, a);
        CHECK(std::abs(jt - schur_bialternant(m, a)) <= 1e-10 * scale);
        CHECK(std::abs(jt - schur_tableau_oracle(m, a)) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("property: symmetry and homogeneity") {
  auto rng = sampling::make_stream(23, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::VectorXcd a = sampling::well_separated(rng, 4);
    const LatticeIndex m{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    const Complex base = schur_jacobi_trudi(m, a);
    const double scale = majorant(m, a);

    Eigen::VectorXcd swapped = a;
    std::swap(swapped(0), swapped(3));
    std::swap(swapped(1), swapped(2));
    CHECK(std::abs(schur_jacobi_trudi(m, swapped) - base) <= 1e-12 * scale);

    const Complex c = sampling::uniform_complex(rng);
    const Complex scaled = schur_jacobi_trudi(m, Eigen::VectorXcd(c * a));
    CHECK(std::abs(scaled - ipow(c, partition_weight(m)) * base) <=
          1e-12 * std::pow(std::abs(c), partition_weight(m)) * scale);
  }
}

TEST_CASE("Laurent form matches pointwise evaluation on the torus") {
  auto rng = sampling::make_stream(29, 0);
  for (int n : {2, 3, 4}) {
    for (const LatticeIndex& m : sampling::weight_indices(n - 1, 6)) {
      const LaurentPoly s = schur_laurent(m, false, n);
      const LaurentPoly sinv = schur_laurent(m, true, n);
      const Eigen::VectorXcd point = sampling::torus_point(rng, n);
      const std::span<const Complex> head(point.data(), static_cast<std::size_t>(n - 1));
      const double scale = majorant(m, point);
      CHECK(std::abs(evaluate(s, head) - schur_jacobi_trudi(m, point)) <= 1e-12 * scale);
      CHECK(std::abs(evaluate(sinv, head) - schur_jacobi_trudi(m, Eigen::VectorXcd(point.cwiseInverse()))) <=
            1e-12 * scale);
    }
  }
}

TEST_CASE("Cauchy identity") {
  const SpectralParams a{0.5, 0.2};
  const Complex closed = cauchy_rhs(a, a);
  CHECK(std::abs(closed - 0.99 / (0.75 * 0.81 * 0.96)) < 1e-14);
  const SeriesResult lhs = cauchy_lhs_truncated(a, a, 80);
  CHECK(std::abs(lhs.value - closed) < 1e-12);
  CHECK(lhs.tail_bound < 1e-12);

  SUBCASE("domain") {
    CHECK(kind_of([] { (void)cauchy_rhs(SpectralParams{1.0, 0.5}, SpectralParams{1.0, 0.5}); }) == ErrorKind::domain);
    CHECK(kind_of([] { (void)cauchy_lhs_truncated(SpectralParams{0.1, 0.2}, SpectralParams{0.1, 0.2, 0.3}, 5); }) ==
          ErrorKind::dimension);
    CHECK(kind_of([] { (void)cauchy_lhs_truncated(SpectralParams{0.1, 0.2}, SpectralParams{0.1, 0.2}, -1); }) ==
          ErrorKind::domain);
  }
}

TEST_CASE("property: truncated Cauchy sum stays within its tail bound") {
  for (int n : {2, 3}) {
    auto rng = sampling::make_stream(31, static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralParams a(sampling::annulus_point(rng, n, 0.1, 0.6));
      const SpectralParams b(sampling::annulus_point(rng, n, 0.1, 0.6));
      const Complex closed = cauchy_rhs(a, b);
      for (int M : {5, 20, 50}) {
        const SeriesResult lhs = cauchy_lhs_truncated(a, b, M);
        CHECK(std::abs(lhs.value - closed) <= lhs.tail_bound + 1e-13 * std::abs(closed));
      }
    }
  }
}

TEST_CASE("Cauchy determinant identity") {
  auto rng = sampling::make_stream(37, 0);
  for (int n : {2, 3, 4}) {
    const SpectralParams a(sampling::annulus_point(rng, n, 0.1, 0.6));
    const SpectralParams b(sampling::annulus_point(rng, n, 0.1, 0.6));
    const auto [det, closed] = cauchy_determinant_check(a, b);
    CHECK(std::abs(det - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
  }
  CHECK(kind_of([] { (void)cauchy_determinant_check(SpectralParams{2.0, 0.3}, SpectralParams{0.5, 0.1}); }) ==
        ErrorKind::pole);
}

TEST_CASE("geometric tail") {
  const GeometricFactor single{0.5, 1};
  CHECK(geometric_tail(std::span<const GeometricFactor>(&single, 1), 10) >= std::pow(0.5, 11) / 0.5 * (1 - 1e-12));
  CHECK(geometric_tail(std::span<const GeometricFactor>(&single, 1), 10) <= 2 * std::pow(0.5, 11) / 0.5);
}

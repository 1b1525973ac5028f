#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace wlab {

using Complex = std::complex<double>;

/// Integer power by repeated squaring.
Complex ipow(Complex base, int exponent);

/// Multivariate Laurent polynomial in the torus variables beta_1..beta_{n-1}
/// with complex coefficients. `rank` is n, the size of the full spectral
/// alphabet before beta_n = 1/(beta_1...beta_{n-1}) is substituted.
///
/// Zero coefficients are pruned after every ring operation at 1e-15 times the
/// largest input coefficient magnitude.
class LaurentPoly {
 public:
  using Coefficient = Complex;
  using Exponent = std::vector<int>;

  static constexpr int kMaxVariables = 6;
  static constexpr int kMaxExponent = 511;
  static constexpr double kPruneRelative = 1e-15;

  explicit LaurentPoly(int rank);

  static LaurentPoly constant(int rank, Coefficient c);
  static LaurentPoly monomial(int rank, const Exponent& e, Coefficient c = 1.0);

  int rank() const noexcept { return rank_; }
  int variables() const noexcept { return rank_ - 1; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Coefficient coefficient(const Exponent& e) const;
  /// Terms in lexicographic exponent order.
  std::vector<std::pair<Exponent, Coefficient>> terms() const;

  double max_abs_coefficient() const noexcept;
  double sum_abs_coefficients() const noexcept;
  /// Largest |e_axis| over all stored monomials.
  int max_abs_exponent(int axis) const;
  /// Largest max(e, 0) - min(e, 0) over all stored monomials, i.e. the spread
  /// of the full n-vector exponent once normalized to minimum 0.
  int spread() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(Coefficient c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, Coefficient c) { return a *= c; }
  friend LaurentPoly operator*(Coefficient c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// e -> -e. On the unit-determinant torus this is the substitution
  /// beta -> 1/beta of the full alphabet.
  LaurentPoly inverted() const;
  /// Coefficient conjugation composed with exponent negation; equals
  /// pointwise complex conjugation on the unit torus.
  LaurentPoly conj_inverted() const;

  bool same_support(const LaurentPoly& other) const;

 private:
  using Key = std::uint64_t;
  static constexpr int kFieldBits = 10;
  static constexpr int kBias = 512;

  Key pack(const Exponent& e) const;
  Exponent unpack(Key key) const;
  Key negate(Key key) const;
  void check_rank(const LaurentPoly& other) const;
  void prune(double threshold);

  int rank_;
  std::map<Key, Coefficient> terms_;

  friend Complex constant_term(const LaurentPoly& a);
  friend Complex constant_term_of_product(const LaurentPoly& a, const LaurentPoly& b);
  friend Complex evaluate(const LaurentPoly& a, std::span<const Complex> point);
};

/// Coefficient of the zero exponent; equals the normalized integral over the
/// unit torus (1/(2 pi i))^{n-1} \oint a(beta) dbeta/beta.
Complex constant_term(const LaurentPoly& a);

/// constant_term(a * b) without forming the product.
Complex constant_term_of_product(const LaurentPoly& a, const LaurentPoly& b);

/// Direct evaluation sum_e c_e prod_i point_i^{e_i}.
Complex evaluate(const LaurentPoly& a, std::span<const Complex> point);

inline Complex evaluate(const LaurentPoly& a, const Eigen::VectorXcd& point) {
  return evaluate(a, std::span<const Complex>(point.data(), static_cast<std::size_t>(point.size())));
}

/// The monomial beta_axis (axis < n-1) or beta_n = 1/(beta_1...beta_{n-1})
/// (axis == n-1) of the full alphabet, as a Laurent monomial.
LaurentPoly alphabet_variable(int rank, int axis);

}  // namespace wlab

#include "whittaker_lab/laurent.hpp"

#include "whittaker_lab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wlab {

namespace {

constexpr std::uint64_t kFieldMask = (1u << 10) - 1;

}  // namespace

Complex ipow(Complex base, int exponent) {
  if (exponent < 0) return Complex(1.0) / ipow(base, -exponent);
  Complex result(1.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

LaurentPoly::LaurentPoly(int rank) : rank_(rank) {
  if (rank < 2 || rank - 1 > kMaxVariables) {
    fail(ErrorKind::dimension, "LaurentPoly rank must be in [2, " +
                                   std::to_string(kMaxVariables + 1) + "], got " +
                                   std::to_string(rank));
  }
}

LaurentPoly LaurentPoly::constant(int rank, Coefficient c) {
  return monomial(rank, Exponent(static_cast<std::size_t>(rank - 1), 0), c);
}

LaurentPoly LaurentPoly::monomial(int rank, const Exponent& e, Coefficient c) {
  LaurentPoly out(rank);
  if (c != Coefficient{}) out.terms_.emplace(out.pack(e), c);
  return out;
}

LaurentPoly::Key LaurentPoly::pack(const Exponent& e) const {
  if (static_cast<int>(e.size()) != variables()) {
    fail(ErrorKind::dimension, "exponent length " + std::to_string(e.size()) +
                                   " does not match " + std::to_string(variables()) +
                                   " torus variables");
  }
  Key key = 0;
  for (int x : e) {
    if (x < -kMaxExponent || x > kMaxExponent) {
      fail(ErrorKind::guard, "Laurent exponent " + std::to_string(x) + " out of range");
    }
    key = (key << kFieldBits) | static_cast<Key>(x + kBias);
  }
  return key;
}

LaurentPoly::Exponent LaurentPoly::unpack(Key key) const {
  Exponent e(static_cast<std::size_t>(variables()));
  for (int i = variables() - 1; i >= 0; --i) {
    e[static_cast<std::size_t>(i)] =
        static_cast<int>(key & kFieldMask) - kBias;
    key >>= kFieldBits;
  }
  return e;
}

LaurentPoly::Key LaurentPoly::negate(Key key) const {
  Exponent e = unpack(key);
  for (int& x : e) x = -x;
  return pack(e);
}

void LaurentPoly::check_rank(const LaurentPoly& other) const {
  if (other.rank_ != rank_) {
    fail(ErrorKind::dimension, "Laurent rank mismatch: " + std::to_string(rank_) +
                                   " vs " + std::to_string(other.rank_));
  }
}

void LaurentPoly::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) {
    const double mag = std::abs(kv.second);
    return mag == 0.0 || mag <= threshold;
  });
}

LaurentPoly::Coefficient LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(pack(e));
  return it == terms_.end() ? Coefficient{} : it->second;
}

std::vector<std::pair<LaurentPoly::Exponent, LaurentPoly::Coefficient>> LaurentPoly::terms() const {
  std::vector<std::pair<Exponent, Coefficient>> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.emplace_back(unpack(key), c);
  return out;
}

double LaurentPoly::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& kv : terms_) m = std::max(m, std::abs(kv.second));
  return m;
}

double LaurentPoly::sum_abs_coefficients() const noexcept {
  double s = 0.0;
  for (const auto& kv : terms_) s += std::abs(kv.second);
  return s;
}

int LaurentPoly::max_abs_exponent(int axis) const {
  if (axis < 0 || axis >= variables()) fail(ErrorKind::dimension, "axis out of range");
  int m = 0;
  for (const auto& kv : terms_) {
    m = std::max(m, std::abs(unpack(kv.first)[static_cast<std::size_t>(axis)]));
  }
  return m;
}

int LaurentPoly::spread() const {
  int best = 0;
  for (const auto& kv : terms_) {
    const Exponent e = unpack(kv.first);
    const int hi = std::max(0, *std::max_element(e.begin(), e.end()));
    const int lo = std::min(0, *std::min_element(e.begin(), e.end()));
    best = std::max(best, hi - lo);
  }
  return best;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_rank(other);
  const double threshold =
      kPruneRelative * std::max(max_abs_coefficient(), other.max_abs_coefficient());
  for (const auto& [key, c] : other.terms_) terms_[key] += c;
  prune(threshold);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_rank(other);
  const double threshold =
      kPruneRelative * std::max(max_abs_coefficient(), other.max_abs_coefficient());
  for (const auto& [key, c] : other.terms_) terms_[key] -= c;
  prune(threshold);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Coefficient c) {
  if (c == Coefficient{}) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_rank(b);
  LaurentPoly out(a.rank_);
  if (a.empty() || b.empty()) return out;

  // Per-axis exponent ranges decide whether packed keys can be added directly.
  const int vars = a.variables();
  auto ranges = [vars](const LaurentPoly& p) {
    std::vector<int> lo(static_cast<std::size_t>(vars), 0), hi(static_cast<std::size_t>(vars), 0);
    bool first = true;
    for (const auto& kv : p.terms_) {
      const auto e = p.unpack(kv.first);
      for (std::size_t i = 0; i < e.size(); ++i) {
        lo[i] = first ? e[i] : std::min(lo[i], e[i]);
        hi[i] = first ? e[i] : std::max(hi[i], e[i]);
      }
      first = false;
    }
    return std::pair{lo, hi};
  };
  const auto [alo, ahi] = ranges(a);
  const auto [blo, bhi] = ranges(b);
  for (int i = 0; i < vars; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (alo[k] + blo[k] < -LaurentPoly::kMaxExponent || ahi[k] + bhi[k] > LaurentPoly::kMaxExponent) {
      fail(ErrorKind::guard, "Laurent product exponent out of range");
    }
  }

  LaurentPoly::Key bias = 0;
  for (int i = 0; i < vars; ++i) {
    bias = (bias << LaurentPoly::kFieldBits) | static_cast<LaurentPoly::Key>(LaurentPoly::kBias);
  }
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) out.terms_[ka + kb - bias] += ca * cb;
  }
  out.prune(LaurentPoly::kPruneRelative * a.max_abs_coefficient() * b.max_abs_coefficient());
  return out;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly out(rank_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(negate(key), c);
  return out;
}

LaurentPoly LaurentPoly::conj_inverted() const {
  LaurentPoly out(rank_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(negate(key), std::conj(c));
  return out;
}

bool LaurentPoly::same_support(const LaurentPoly& other) const {
  if (other.rank_ != rank_ || other.terms_.size() != terms_.size()) return false;
  return std::equal(terms_.begin(), terms_.end(), other.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; });
}

Complex constant_term(const LaurentPoly& a) {
  return a.coefficient(LaurentPoly::Exponent(static_cast<std::size_t>(a.variables()), 0));
}

Complex constant_term_of_product(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_rank(b);
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& large = a.size() <= b.size() ? b : a;
  Complex acc{};
  for (const auto& [key, c] : small.terms_) {
    auto it = large.terms_.find(small.negate(key));
    if (it != large.terms_.end()) acc += c * it->second;
  }
  return acc;
}

Complex evaluate(const LaurentPoly& a, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != a.variables()) {
    fail(ErrorKind::dimension, "evaluation point has " + std::to_string(point.size()) +
                                   " coordinates, expected " + std::to_string(a.variables()));
  }
  Complex acc{};
  for (const auto& [key, c] : a.terms_) {
    const auto e = a.unpack(key);
    Complex mono = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (point[i] == Complex{} && e[i] < 0) {
        fail(ErrorKind::evaluation, "negative power of a zero coordinate");
      }
      mono *= ipow(point[i], e[i]);
    }
    acc += mono;
  }
  return acc;
}

LaurentPoly alphabet_variable(int rank, int axis) {
  LaurentPoly::Exponent e(static_cast<std::size_t>(rank - 1), 0);
  if (axis < 0 || axis >= rank) fail(ErrorKind::dimension, "alphabet axis out of range");
  if (axis == rank - 1) {
    std::fill(e.begin(), e.end(), -1);
  } else {
    e[static_cast<std::size_t>(axis)] = 1;
  }
  return LaurentPoly::monomial(rank, e);
}

}  // namespace wlab

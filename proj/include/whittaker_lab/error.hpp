#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wlab {

enum class ErrorKind {
  dimension,     // rank mismatch between operands
  evaluation,    // Laurent evaluation at a zero coordinate with negative powers
  conditioning,  // nearly coincident parameters or a pole too close to a contour
  guard,         // combinatorial / support size guard exceeded
  domain,        // input outside the convergence or definition domain
  pole,          // a denominator factor vanishes
  support,       // negative valuation where a nonnegative one is required
  context,       // invalid prime or rank
  contract,      // caller-side contract violated (missing decay bound, asymmetric H)
  unsupported,   // no closed form for the requested degree
  divergence,    // a series was detected not to converge
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace wlab

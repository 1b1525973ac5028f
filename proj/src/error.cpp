#include "whittaker_lab/error.hpp"

namespace wlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::evaluation: return "evaluation";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::guard: return "guard";
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::support: return "support";
    case ErrorKind::context: return "context";
    case ErrorKind::contract: return "contract";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::divergence: return "divergence";
  }
  return "unknown";
}

}  // namespace wlab

#include "whittaker_lab/parallel.hpp"

#include <charconv>
#include <cstring>

namespace wlab::parallel {

std::size_t worker_count() {
  if (const char* env = std::getenv("WHITTAKER_LAB_THREADS")) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace wlab::parallel

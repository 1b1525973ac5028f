#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wlab::parallel {

/// Worker count: WHITTAKER_LAB_THREADS if set and positive, otherwise the
/// hardware concurrency. Never less than one.
std::size_t worker_count();

/// Pairwise sum. The association order depends only on values.size().
template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc{};
    for (const auto& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline constexpr std::size_t kChunk = 512;

/// Deterministic parallel reduction of term(0) + ... + term(count-1).
///
/// Chunk boundaries are fixed by `count` alone and chunk results are combined
/// with pairwise_sum, so the result is bitwise independent of the thread count.
template <typename T, typename Term>
T tree_sum(std::size_t count, Term&& term) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<T> partial(chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(count, begin + kChunk);
    std::vector<T> local;
    local.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) local.push_back(term(i));
    partial[c] = pairwise_sum(std::span<const T>(local));
  };

  const std::size_t workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next = chunks;
          }
        });
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  }
  return pairwise_sum(std::span<const T>(partial));
}

}  // namespace wlab::parallel

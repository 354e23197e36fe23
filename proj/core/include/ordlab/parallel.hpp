#pragma once

// Minimal fork-join helpers. Work is split into index chunks; results are
// identified by index so callers merge in canonical order and the outcome
// does not depend on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ordlab {

template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(body);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

/// Smallest index in [0, count) for which pred holds.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t count, std::size_t workers, Pred&& pred) {
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      if (pred(k)) return k;
    }
    return std::nullopt;
  }
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::atomic<std::size_t> best{count};
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(count, lo + kChunk);
    for (std::size_t k = lo; k < hi && k < best.load(); ++k) {
      if (pred(k)) {
        std::size_t seen = best.load();
        while (k < seen && !best.compare_exchange_weak(seen, k)) {
        }
        return;
      }
    }
  });
  if (best.load() == count) return std::nullopt;
  return best.load();
}

}  // namespace ordlab

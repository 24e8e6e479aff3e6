#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace normtrace {

// Default cap on the number of summands any single enumeration may visit.
inline constexpr std::uint64_t kDefaultSummandCap = std::uint64_t{1} << 24;

// How an enumeration is split and run. Results depend on `partitions` only;
// `threads` just decides how many partitions run at once (0 = hardware).
struct Execution {
  unsigned partitions = 1;
  unsigned threads = 0;
  std::uint64_t max_summands = kDefaultSummandCap;
};

struct IndexRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t size() const { return end - begin; }
};

// Splits [0, total) into `parts` contiguous ranges whose sizes differ by at
// most one. Some ranges are empty when parts > total.
inline std::vector<IndexRange> split_range(std::uint64_t total, unsigned parts) {
  parts = std::max(parts, 1u);
  std::vector<IndexRange> out(parts);
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t at = 0;
  for (unsigned i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out[i] = {at, at + len};
    at += len;
  }
  return out;
}

// Runs fn(range, partition_index) for every partition of [0, total) and
// returns the results in partition order, regardless of completion order.
template <class T, class Fn>
std::vector<T> map_partitions(std::uint64_t total, const Execution& exec, Fn&& fn) {
  const auto ranges = split_range(total, exec.partitions);
  std::vector<T> results(ranges.size());
  unsigned workers = exec.threads != 0 ? exec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ranges.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < ranges.size(); ++i) results[i] = fn(ranges[i], i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < ranges.size(); i = next++) {
          try {
            results[i] = fn(ranges[i], i);
          } catch (...) {
            std::scoped_lock lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace normtrace

#pragma once

// Deterministic parallel Monte Carlo reduction.
//
// Samples are grouped into fixed blocks whose size depends only on the sample
// count. Each block is reduced sequentially in index order and blocks are merged
// in block order, so the result is bit-identical for any number of workers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace igeo {

struct ExecPolicy {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;

  unsigned resolved() const {
    if (workers > 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Welford mean/variance with a discard counter.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t discarded = 0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void discard() { ++discarded; }

  void merge(const RunningStats& other) {
    discarded += other.discarded;
    if (other.count == 0) return;
    if (count == 0) {
      const std::uint64_t keep = discarded;
      *this = other;
      discarded = keep;
      return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
  }

  /// Unbiased sample variance (0 for fewer than two samples).
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const { return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }
};

/// Samples per reduction block for `n` samples; independent of the worker count.
inline std::uint64_t block_size_for(std::uint64_t n) {
  constexpr std::uint64_t kTargetBlocks = 512;
  return std::max<std::uint64_t>(1, (n + kTargetBlocks - 1) / kTargetBlocks);
}

/// Runs `sample(index, stats)` for index in [0, n) and returns the merged stats.
/// Exceptions thrown by `sample` are rethrown on the calling thread.
template <class SampleFn>
RunningStats accumulate_samples(std::uint64_t n, const ExecPolicy& policy, SampleFn&& sample) {
  const std::uint64_t block = block_size_for(n);
  const std::uint64_t num_blocks = n == 0 ? 0 : (n + block - 1) / block;
  std::vector<RunningStats> partial(num_blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= num_blocks) return;
      try {
        RunningStats local;
        const std::uint64_t end = std::min(n, (b + 1) * block);
        for (std::uint64_t i = b * block; i < end; ++i) sample(i, local);
        partial[b] = local;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(num_blocks);
        return;
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(policy.resolved(), std::max<std::uint64_t>(1, num_blocks)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunningStats total;
  for (const RunningStats& p : partial) total.merge(p);
  return total;
}

}  // namespace igeo

#pragma once

// Reproducible replication engine.
//
// Replication i draws only from stream(i) of a SeedPlan, and results are
// written once per index and reduced afterwards, so a run is bit-identical
// for any worker count or execution order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ineq/distributions.hpp"

namespace ineq {

/// Estimate of a probability from Monte Carlo (or exact when mc_se == 0).
struct McSummary {
  double estimate = 0.0;
  double mc_se = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t master_seed = 0;

  bool operator==(const McSummary&) const = default;
};

/// sqrt(p (1 - p) / n). Throws std::invalid_argument for n == 0.
double mc_se(double p, std::uint64_t n);

/// Summary for `successes` out of `reps` indicators.
McSummary summarize(std::uint64_t successes, std::uint64_t reps, std::uint64_t master_seed);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a, used for string tags and config hashes.
std::uint64_t fnv1a64(std::string_view text);

/// Counter-based seed derivation: stream(id) is a pure function of (master_seed, id).
class SeedPlan {
 public:
  explicit SeedPlan(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master_seed() const { return master_; }
  Rng stream(std::uint64_t id) const;

  /// Independent sub-plan, e.g. one per table cell.
  SeedPlan child(std::uint64_t tag) const;
  SeedPlan child(std::string_view tag) const { return child(fnv1a64(tag)); }

 private:
  std::uint64_t master_;
};

class ReplicationError : public std::runtime_error {
 public:
  ReplicationError(std::uint64_t index, const std::string& what, bool numerical = false)
      : std::runtime_error("replication " + std::to_string(index) + " failed: " + what),
        index_(index),
        numerical_(numerical) {}
  std::uint64_t index() const { return index_; }
  /// The underlying failure was a NumericalError.
  bool numerical() const { return numerical_; }

 private:
  std::uint64_t index_;
  bool numerical_;
};

/// 0 means "all hardware threads".
unsigned resolve_workers(unsigned requested, std::uint64_t reps);

/// Runs fn(i, stream(i)) for i in [0, reps) on up to `workers` threads and
/// returns the results in index order. If any replication throws, the one
/// with the smallest index is rethrown as ReplicationError.
template <class T, class Fn>
std::vector<T> map_replications(std::uint64_t reps, const SeedPlan& plan, unsigned workers, Fn&& fn) {
  std::vector<T> out(reps);
  const unsigned n_workers = resolve_workers(workers, reps);

  std::atomic<std::uint64_t> next{0};
  std::mutex err_mutex;
  std::uint64_t err_index = reps;
  std::string err_what;
  bool err_numerical = false;

  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= reps) return;
      try {
        Rng rng = plan.stream(i);
        out[i] = fn(i, rng);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err_what = e.what();
          err_numerical = dynamic_cast<const NumericalError*>(&e) != nullptr;
        }
      }
    }
  };

  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  if (err_index < reps) throw ReplicationError(err_index, err_what, err_numerical);
  return out;
}

struct RunOptions {
  unsigned workers = 0;
  bool keep_indicators = false;
  std::string config_echo;
};

struct RunReport {
  McSummary summary;
  std::vector<std::uint8_t> indicators;  // empty unless requested
  double wall_seconds = 0.0;
  std::string config;
};

using ReplicationTask = std::function<bool(std::uint64_t index, Rng& rng)>;

/// Runs an indicator-valued task and reduces by exact integer summation.
RunReport run_replications(std::uint64_t reps, const SeedPlan& plan, const ReplicationTask& task,
                           const RunOptions& options = {});

}  // namespace ineq

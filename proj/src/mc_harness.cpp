#include "ineq/mc_harness.hpp"

namespace ineq {

double mc_se(double p, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mc_se: n must be positive");
  const double v = p * (1.0 - p);
  return v <= 0.0 ? 0.0 : std::sqrt(v / static_cast<double>(n));
}

McSummary summarize(std::uint64_t successes, std::uint64_t reps, std::uint64_t master_seed) {
  if (reps == 0) throw std::invalid_argument("summarize: reps must be positive");
  const double p = static_cast<double>(successes) / static_cast<double>(reps);
  return McSummary{p, mc_se(p, reps), reps, master_seed};
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng SeedPlan::stream(std::uint64_t id) const {
  const std::uint64_t key = mix64(master_ ^ mix64(id + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return Rng(seq);
}

SeedPlan SeedPlan::child(std::uint64_t tag) const {
  return SeedPlan(mix64(mix64(master_) ^ mix64(tag ^ 0xd1b54a32d192ed03ULL)));
}

unsigned resolve_workers(unsigned requested, std::uint64_t reps) {
  unsigned w = requested;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  if (reps < w) w = static_cast<unsigned>(std::max<std::uint64_t>(reps, 1));
  return w;
}

RunReport run_replications(std::uint64_t reps, const SeedPlan& plan, const ReplicationTask& task,
                           const RunOptions& options) {
  if (reps == 0) throw std::invalid_argument("run_replications: reps must be positive");
  const auto start = std::chrono::steady_clock::now();
  auto hits = map_replications<std::uint8_t>(
      reps, plan, options.workers, [&](std::uint64_t i, Rng& rng) -> std::uint8_t { return task(i, rng) ? 1 : 0; });

  std::uint64_t successes = 0;
  for (const auto h : hits) successes += h;

  RunReport report;
  report.summary = summarize(successes, reps, plan.master_seed());
  if (options.keep_indicators) report.indicators = std::move(hits);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.config = options.config_echo;
  return report;
}

}  // namespace ineq

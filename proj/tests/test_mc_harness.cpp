#include <algorithm>
#include <set>

#include "doctest.h"
#include "ineq/mc_harness.hpp"

using namespace ineq;

TEST_CASE("mc_se") {
  CHECK(mc_se(0.5, 100) == doctest::Approx(0.05));
  CHECK(mc_se(0.0, 17) == 0.0);
  CHECK(mc_se(1.0, 17) == 0.0);
  CHECK(mc_se(0.1, 1000) == doctest::Approx(0.0094868329805051).epsilon(1e-12));
  CHECK_THROWS_AS(mc_se(0.5, 0), std::invalid_argument);
}

TEST_CASE("seed streams are pure and distinct") {
  const SeedPlan plan(42);
  Rng a = plan.stream(7);
  Rng b = plan.stream(7);
  CHECK(a() == b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(plan.stream(i)());
  CHECK(firsts.size() == 1000);
  CHECK(SeedPlan(43).stream(7)() != SeedPlan(42).stream(7)());
  CHECK(plan.child("a").master_seed() != plan.child("b").master_seed());
  CHECK(plan.child(std::uint64_t{1}).master_seed() == plan.child(std::uint64_t{1}).master_seed());
  CHECK(plan.child(std::uint64_t{1}).master_seed() != plan.master_seed());
}

TEST_CASE("run_replications") {
  const SeedPlan plan(2024);
  SUBCASE("constant task") {
    const auto r = run_replications(100, plan, [](std::uint64_t, Rng&) { return true; });
    CHECK(r.summary.estimate == 1.0);
    CHECK(r.summary.mc_se == 0.0);
    CHECK(r.summary.reps == 100);
    CHECK(r.summary.master_seed == 2024);
  }
  SUBCASE("fair coin") {
    const auto r = run_replications(10000, plan, [](std::uint64_t, Rng& rng) { return (rng() & 1u) == 1u; });
    CHECK(std::abs(r.summary.estimate - 0.5) < 0.015);
  }
  SUBCASE("worker count does not change the report") {
    auto coin = [](std::uint64_t, Rng& rng) { return std::uniform_real_distribution<double>(0, 1)(rng) < 0.3; };
    RunOptions one{1, true, "cfg"};
    RunOptions eight{8, true, "cfg"};
    const auto a = run_replications(5000, plan, coin, one);
    const auto b = run_replications(5000, plan, coin, eight);
    CHECK(a.summary == b.summary);
    CHECK(a.indicators == b.indicators);
    CHECK(a.config == "cfg");
    std::uint64_t ones = 0;
    for (auto v : a.indicators) ones += v;
    CHECK(a.summary.estimate == static_cast<double>(ones) / 5000.0);
  }
  SUBCASE("indicators are dropped unless requested") {
    const auto r = run_replications(10, plan, [](std::uint64_t, Rng&) { return false; });
    CHECK(r.indicators.empty());
    CHECK(r.summary.estimate == 0.0);
  }
  CHECK_THROWS_AS(run_replications(0, plan, [](std::uint64_t, Rng&) { return true; }), std::invalid_argument);
}

TEST_CASE("replication failures report the smallest failing index") {
  const SeedPlan plan(1);
  for (unsigned workers : {1u, 4u}) {
    try {
      run_replications(
          200, plan,
          [](std::uint64_t i, Rng&) -> bool {
            if (i == 150 || i == 37) throw NumericalError("boom");
            return true;
          },
          RunOptions{workers, false, {}});
      FAIL("expected a ReplicationError");
    } catch (const ReplicationError& e) {
      CHECK(e.index() == 37);
      CHECK(e.numerical());
      CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
  }
}

TEST_CASE("execution order does not matter") {
  // Each replication is a pure function of its index, so results are
  // independent of which worker picks which index.
  const SeedPlan plan(99);
  auto value = [](std::uint64_t, Rng& rng) { return static_cast<std::uint32_t>(rng() >> 40); };
  const auto serial = map_replications<std::uint32_t>(300, plan, 1, value);
  const auto parallel = map_replications<std::uint32_t>(300, plan, 7, value);
  CHECK(serial == parallel);
  for (std::uint64_t i : {0u, 123u, 299u}) {
    Rng rng = plan.stream(i);
    CHECK(serial[i] == value(i, rng));
  }
}

TEST_CASE("resolve_workers") {
  CHECK(resolve_workers(4, 2) == 2);
  CHECK(resolve_workers(3, 100) == 3);
  CHECK(resolve_workers(0, 100) >= 1);
}

TEST_CASE("fnv1a64 known values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

#pragma once

// Table and experiment runners behind each ineqtest command.

#include <cstdint>
#include <vector>

#include "ineq/config.hpp"
#include "ineq/emit.hpp"

namespace ineq {

// Defaults used when a setting is absent from the configuration.
namespace defaults {
inline const std::vector<int> table1_n = {100, 1000};
inline const std::vector<double> table1_h = {0.0, 0.5, 0.9};
inline constexpr std::uint64_t table1_draws = 20000;
inline constexpr std::uint64_t table1_dd_bootstrap = 999;

inline const std::vector<int> table2_n = {100, 1000};
inline const std::vector<double> table2_h = {0.0, 0.9, 1.3};
inline const std::vector<double> table2_alpha = {0.1};
inline constexpr std::uint64_t table2_reps = 1000;
inline constexpr std::uint64_t table2_draws = 1000;
inline constexpr std::uint64_t table2_dd_bootstrap = 199;

inline const std::vector<double> table3_sigma_eps = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
inline const std::vector<double> table3_alpha = {0.05, 0.10};
inline constexpr std::uint64_t table3_reps = 500;
inline constexpr std::uint64_t table3_draws = 200;
inline constexpr int table3_n = 100;

inline const std::vector<int> kline_d = {10, 25, 90};
inline constexpr double kline_x = 1.64;

inline const std::vector<double> limit_alpha = {0.05};
inline constexpr std::uint64_t limit_reps = 10000;
inline constexpr std::uint64_t limit_draws = 1000;

inline constexpr std::uint64_t sd_test_draws = 20000;
}  // namespace defaults

/// Columns: h0, n, h, comparison, method, value.
ResultTable run_table1(const RunConfig& cfg);
/// Columns: h0, n, h, comparison, method, alpha, rate, mc_se, reps.
ResultTable run_table2(const RunConfig& cfg);
/// Columns: sigma_eps, alpha, rate, mc_se, monotonicity_rate, reps, draws, redraws.
ResultTable run_table3(const RunConfig& cfg);
/// Columns: d, x, posterior.
ResultTable run_kline(const RunConfig& cfg);
/// Columns: h0, comparison, method, value, mc_se.
ResultTable run_sd_test(const RunConfig& cfg);
/// Columns: kind, alpha, theta, status, value, mc_se, reps, exact.
ResultTable run_limit(const RunConfig& cfg);

ResultTable run_command(const RunConfig& cfg);

}  // namespace ineq

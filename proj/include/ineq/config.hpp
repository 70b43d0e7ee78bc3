#pragma once

// Run configuration for the ineqtest tool: a flat key=value file with flag overrides.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ineq/limit_experiment.hpp"
#include "ineq/stochastic_dominance.hpp"

namespace ineq {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  /// 1-based line in the config file, 0 for flags.
  int line() const { return line_; }

 private:
  int line_;
};

enum class Command { Table1, Table2, Table3, Kline, SdTest, Limit };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(BootstrapVariant b);

struct RunConfig {
  Command command = Command::Table1;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> reps;
  std::optional<std::uint64_t> draws;
  std::vector<double> alpha;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
  BootstrapVariant bootstrap = BootstrapVariant::Banks;
  std::vector<double> h;
  std::vector<int> n;
  std::vector<double> sigma_eps;
  double delta = 0.001;
  double sigma_x = 0.1;
  std::string region;
  std::vector<std::vector<double>> theta;  // null points, ';'-separated in text
  std::vector<double> x;
  std::optional<double> corr;
  unsigned workers = 0;
  std::string data_x;
  std::string data_y;
  std::optional<std::uint64_t> dd_bootstrap;

  /// Canonical text of every setting that affects results (not workers, out or format).
  std::string canonical() const;
  std::uint64_t hash() const;
};

/// Keys accepted in files and as --flags.
const std::vector<std::string>& config_keys();

/// Reads `path` (if given), then applies `overrides` in order. Keys may use '-' or '_'.
/// Throws ConfigError, carrying the file line number for file errors.
RunConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

/// Same, with the file contents given directly.
RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides);

/// halfspace:c1,c2,...:c0 | box:lo..hi,... | interval:[a,b]|[c,d] | signagree | complement(<spec>)
NullRegion parse_region(const std::string& spec);

/// Newline-delimited decimal numbers; blank lines and '#' comments skipped.
std::vector<double> read_sample_file(const std::string& path);

}  // namespace ineq

#pragma once

// Tabular results and their CSV / JSON renderings.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ineq/config.hpp"

namespace ineq {

using Cell = std::variant<std::string, std::int64_t, double>;

struct Column {
  std::string name;
  /// Estimates are printed with 3 decimals and get a "<name>_full" companion
  /// holding the exact double; other reals print in shortest round-trip form.
  bool estimate = false;
};

struct ResultTable {
  std::string command;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;

  void add_row(std::vector<Cell> row);
  /// Header names after expansion, ending with seed and config_hash.
  std::vector<std::string> header() const;
};

std::string format_hash(std::uint64_t h);

std::string render_csv(const ResultTable& table);
std::string render_json(const ResultTable& table);

/// Writes to `path`, or standard output when empty. An empty table is an error
/// and creates no file.
void emit_table(const ResultTable& table, OutputFormat format, const std::string& path);

}  // namespace ineq

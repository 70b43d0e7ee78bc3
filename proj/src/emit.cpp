#include "ineq/emit.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ineq {

namespace {

std::string shortest(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("ResultTable::add_row: expected " + std::to_string(columns.size()) + " cells");
  }
  rows.push_back(std::move(row));
}

std::vector<std::string> ResultTable::header() const {
  std::vector<std::string> h;
  for (const auto& c : columns) {
    h.push_back(c.name);
    if (c.estimate) h.push_back(c.name + "_full");
  }
  h.push_back("seed");
  h.push_back("config_hash");
  return h;
}

std::string format_hash(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string render_csv(const ResultTable& table) {
  std::ostringstream os;
  const auto head = table.header();
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << head[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      const auto& cell = row[j];
      if (const auto* s = std::get_if<std::string>(&cell)) {
        os << csv_escape(*s);
        if (table.columns[j].estimate) os << ',' << csv_escape(*s);
      } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        os << *i;
      } else {
        const double v = std::get<double>(cell);
        if (table.columns[j].estimate) {
          os << fixed3(v) << ',' << full(v);
        } else {
          os << shortest(v);
        }
      }
    }
    os << ',' << table.seed << ',' << format_hash(table.config_hash) << '\n';
  }
  return os.str();
}

std::string render_json(const ResultTable& table) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["seed"] = table.seed;
  doc["config_hash"] = format_hash(table.config_hash);
  doc["columns"] = table.header();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto& name = table.columns[j].name;
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (table.columns[j].estimate) {
                r[name] = std::stod(fixed3(v));
                r[name + "_full"] = v;
              } else {
                r[name] = v;
              }
            } else {
              r[name] = v;
              if (table.columns[j].estimate) r[name + "_full"] = v;
            }
          },
          row[j]);
    }
    r["seed"] = table.seed;
    r["config_hash"] = format_hash(table.config_hash);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit_table(const ResultTable& table, OutputFormat format, const std::string& path) {
  if (table.rows.empty()) throw ConfigError("no results to emit");
  const std::string text = format == OutputFormat::Csv ? render_csv(table) : render_json(table);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write output file '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace ineq

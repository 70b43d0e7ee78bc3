#include "ineq/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ineq {

std::string to_string(Command c) {
  switch (c) {
    case Command::Table1: return "table1";
    case Command::Table2: return "table2";
    case Command::Table3: return "table3";
    case Command::Kline: return "kline";
    case Command::SdTest: return "sd-test";
    case Command::Limit: return "limit";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

std::string to_string(BootstrapVariant b) { return b == BootstrapVariant::Rubin ? "rubin" : "banks"; }

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& text, const std::string& key, int line, bool allow_inf = false) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last || std::isnan(v) || (!allow_inf && std::isinf(v))) {
    throw ConfigError(key + ": expected a finite number, got '" + t + "'", line);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key, int line) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key + ": expected a nonnegative integer, got '" + t + "'", line);
  }
  return v;
}

std::uint64_t parse_positive(const std::string& text, const std::string& key, int line) {
  const auto v = parse_u64(text, key, line);
  if (v == 0) throw ConfigError(key + ": must be positive", line);
  return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& key, int line) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item, key, line));
  return out;
}

std::string normalize_key(std::string key) {
  key = trim(key);
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

template <class E>
E parse_enum(const std::string& text, const std::string& key, int line,
             const std::vector<std::pair<std::string, E>>& options) {
  const std::string t = trim(text);
  for (const auto& [name, value] : options) {
    if (t == name) return value;
  }
  std::string listed;
  for (const auto& [name, value] : options) listed += (listed.empty() ? "" : ", ") + name;
  throw ConfigError(key + ": invalid value '" + t + "' (expected one of: " + listed + ")", line);
}

struct Builder {
  RunConfig cfg;
  bool have_command = false;

  void apply(const std::string& raw_key, const std::string& value, int line) {
    const std::string key = normalize_key(raw_key);
    if (key == "command") {
      cfg.command = parse_enum<Command>(value, key, line,
                                        {{"table1", Command::Table1},
                                         {"table2", Command::Table2},
                                         {"table3", Command::Table3},
                                         {"kline", Command::Kline},
                                         {"sd-test", Command::SdTest},
                                         {"limit", Command::Limit}});
      have_command = true;
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key, line);
    } else if (key == "reps") {
      cfg.reps = parse_positive(value, key, line);
    } else if (key == "draws") {
      cfg.draws = parse_positive(value, key, line);
    } else if (key == "alpha") {
      cfg.alpha = parse_real_list(value, key, line);
      for (double a : cfg.alpha) {
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha: each level must lie in (0, 1)", line);
      }
    } else if (key == "out") {
      cfg.out = trim(value);
    } else if (key == "format") {
      cfg.format = parse_enum<OutputFormat>(value, key, line, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
    } else if (key == "bootstrap") {
      cfg.bootstrap = parse_enum<BootstrapVariant>(value, key, line,
                                                   {{"rubin", BootstrapVariant::Rubin}, {"banks", BootstrapVariant::Banks}});
    } else if (key == "h") {
      cfg.h = parse_real_list(value, key, line);
    } else if (key == "n") {
      cfg.n.clear();
      for (const auto& item : split(value, ',')) {
        const auto v = parse_positive(item, key, line);
        if (v > 10'000'000) throw ConfigError("n: too large", line);
        cfg.n.push_back(static_cast<int>(v));
      }
    } else if (key == "sigma-eps") {
      cfg.sigma_eps = parse_real_list(value, key, line);
      for (double s : cfg.sigma_eps) {
        if (s < 0.0) throw ConfigError("sigma-eps: must be nonnegative", line);
      }
    } else if (key == "delta") {
      cfg.delta = parse_real(value, key, line);
    } else if (key == "sigma-x") {
      cfg.sigma_x = parse_real(value, key, line);
      if (cfg.sigma_x < 0.0) throw ConfigError("sigma-x: must be nonnegative", line);
    } else if (key == "region") {
      try {
        (void)parse_region(value);
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line);
      }
      cfg.region = trim(value);
    } else if (key == "theta") {
      cfg.theta.clear();
      for (const auto& point : split(value, ';')) cfg.theta.push_back(parse_real_list(point, key, line));
    } else if (key == "x") {
      cfg.x = parse_real_list(value, key, line);
    } else if (key == "corr") {
      const double c = parse_real(value, key, line);
      if (c < -1.0 || c > 1.0) throw ConfigError("corr: must lie in [-1, 1]", line);
      cfg.corr = c;
    } else if (key == "workers") {
      const auto w = parse_u64(value, key, line);
      if (w > 4096) throw ConfigError("workers: too many", line);
      cfg.workers = static_cast<unsigned>(w);
    } else if (key == "data-x") {
      cfg.data_x = trim(value);
    } else if (key == "data-y") {
      cfg.data_y = trim(value);
    } else if (key == "dd-bootstrap") {
      cfg.dd_bootstrap = parse_positive(value, key, line);
    } else {
      throw ConfigError("unknown key '" + trim(raw_key) + "'", line);
    }
  }

  RunConfig finish() {
    if (!have_command) throw ConfigError("command required");
    return cfg;
  }
};

void parse_lines(Builder& b, std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value", number);
    b.apply(t.substr(0, eq), t.substr(eq + 1), number);
  }
}

void append_list(std::ostringstream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    os << (i ? "," : "") << buf;
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "seed", "reps",  "draws",   "alpha",  "out",    "format",       "bootstrap",
      "h",       "n",    "sigma-eps", "delta", "sigma-x", "region", "theta",     "x",
      "corr",    "workers", "data-x", "data-y", "dd-bootstrap"};
  return keys;
}

RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
  Builder b;
  std::istringstream in(text);
  parse_lines(b, in);
  for (const auto& [k, v] : overrides) b.apply(k, v, 0);
  return b.finish();
}

RunConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  Builder b;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read config file '" + *path + "'");
    parse_lines(b, in);
  }
  for (const auto& [k, v] : overrides) b.apply(k, v, 0);
  return b.finish();
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  char buf[32];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "command=" << to_string(command) << ";seed=" << seed;
  os << ";reps=" << (reps ? std::to_string(*reps) : "default");
  os << ";draws=" << (draws ? std::to_string(*draws) : "default");
  os << ";alpha=";
  append_list(os, alpha);
  os << ";bootstrap=" << to_string(bootstrap) << ";h=";
  append_list(os, h);
  os << ";n=";
  for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ";sigma-eps=";
  append_list(os, sigma_eps);
  os << ";delta=" << real(delta) << ";sigma-x=" << real(sigma_x) << ";region=" << region << ";theta=";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) os << ";";
    append_list(os, theta[i]);
  }
  os << ";x=";
  append_list(os, x);
  os << ";corr=" << (corr ? real(*corr) : "none");
  os << ";data-x=" << data_x << ";data-y=" << data_y;
  os << ";dd-bootstrap=" << (dd_bootstrap ? std::to_string(*dd_bootstrap) : "default");
  return os.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

NullRegion parse_region(const std::string& raw) {
  const std::string spec = trim(raw);
  auto fail = [&](const std::string& why) -> ConfigError {
    return ConfigError("region '" + spec + "': " + why +
                       " (grammar: halfspace:c1,...:c0 | halfline:c0 | box:lo..hi,... | "
                       "interval:[a,b]|[c,d] | signagree | complement(<spec>))");
  };
  auto real = [&](const std::string& t) {
    try {
      return parse_real(t, "region", 0, true);
    } catch (const ConfigError&) {
      throw fail("bad number '" + t + "'");
    }
  };
  try {
    if (spec.rfind("complement(", 0) == 0) {
      if (spec.back() != ')') throw fail("unbalanced parenthesis");
      return NullRegion::complement(parse_region(spec.substr(11, spec.size() - 12)));
    }
    if (spec == "signagree") return NullRegion::sign_agreement();
    if (spec.rfind("halfspace:", 0) == 0) {
      const std::string rest = spec.substr(10);
      const auto colon = rest.rfind(':');
      if (colon == std::string::npos) throw fail("missing ':c0'");
      std::vector<double> c;
      for (const auto& item : split(rest.substr(0, colon), ',')) c.push_back(real(item));
      return NullRegion::half_space(std::move(c), real(rest.substr(colon + 1)));
    }
    if (spec.rfind("halfline:", 0) == 0) return NullRegion::lower_half_line(real(spec.substr(9)));
    if (spec.rfind("box:", 0) == 0) {
      std::vector<double> lo;
      std::vector<double> hi;
      for (const auto& item : split(spec.substr(4), ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) throw fail("box bounds need lo..hi");
        lo.push_back(real(item.substr(0, dots)));
        hi.push_back(real(item.substr(dots + 2)));
      }
      return NullRegion::box(std::move(lo), std::move(hi));
    }
    if (spec.rfind("interval:", 0) == 0) {
      std::vector<Interval> ivs;
      for (const auto& item : split(spec.substr(9), '|')) {
        if (item.size() < 2 || item.front() != '[' || item.back() != ']') throw fail("intervals need [a,b]");
        const auto parts = split(item.substr(1, item.size() - 2), ',');
        if (parts.size() != 2) throw fail("intervals need [a,b]");
        ivs.push_back(Interval{real(parts[0]), real(parts[1])});
      }
      return NullRegion::interval_union(std::move(ivs));
    }
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  throw fail("unknown region kind");
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read data file '" + path + "'");
  std::vector<double> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    try {
      out.push_back(parse_real(t, path, number));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("data file '" + path + "' contains no numbers");
  return out;
}

}  // namespace ineq

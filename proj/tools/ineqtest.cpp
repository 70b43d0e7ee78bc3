// ineqtest: reproduce the simulation tables or run a custom experiment.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ineq/config.hpp"
#include "ineq/emit.hpp"
#include "ineq/mc_harness.hpp"
#include "ineq/tables.hpp"

namespace {

constexpr const char* kFooter = R"(CSV schemas (every row ends with seed,config_hash):
  table1  h0,n,h,comparison,method,value,value_full
  table2  h0,n,h,comparison,method,alpha,rate,rate_full,mc_se,reps
  table3  sigma_eps,alpha,rate,rate_full,mc_se,monotonicity_rate,monotonicity_rate_full,reps,draws,redraws
  kline   d,x,posterior,posterior_full
  sd-test h0,comparison,method,value,value_full,mc_se
  limit   kind,alpha,theta,status,value,value_full,mc_se,reps,exact,exact_full
Methods: ks (one-sided KS), iu_beta (order-statistic IU test), dd (bootstrap min-t),
iu_maxt (IU max-t), bayes (posterior probability of H0).
Region grammar: halfspace:c1,...:c0 | halfline:c0 | box:lo..hi,... | interval:[a,b]|[c,d]
  | signagree | complement(<spec>)
Config files hold key=value lines with the flag names as keys; flags override the file.
Exit codes: 0 success, 2 configuration error, 3 numerical failure.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian and frequentist tests of inequality hypotheses"};
  app.footer(kFooter);
  app.set_help_flag("--help", "Print this help message and exit");

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "key=value configuration file");

  const std::map<std::string, std::string> help = {
      {"command", "table1|table2|table3|kline|sd-test|limit"},
      {"seed", "master seed (u64)"},
      {"reps", "Monte Carlo replications"},
      {"draws", "posterior draws"},
      {"alpha", "comma-separated levels"},
      {"out", "output path (default: stdout)"},
      {"format", "csv|json"},
      {"bootstrap", "rubin|banks"},
      {"h", "comma-separated local shifts"},
      {"n", "comma-separated sample sizes (kline: dimensions)"},
      {"sigma-eps", "comma-separated error sds"},
      {"delta", "curvature slack of the translog truth"},
      {"sigma-x", "sd of log output and log prices"},
      {"region", "null region spec"},
      {"theta", "parameter points, ';'-separated"},
      {"x", "observation (limit) or common coordinate (kline)"},
      {"corr", "correlation of a bivariate experiment"},
      {"workers", "worker threads, 0 = all cores"},
      {"data-x", "sample file for X"},
      {"data-y", "sample file for Y"},
      {"dd-bootstrap", "bootstrap replications of the min-t test"},
  };
  std::map<std::string, std::string> values;
  for (const auto& key : ineq::config_keys()) {
    app.add_option("--" + key, values[key], help.at(key));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& key : ineq::config_keys()) {
    if (app.count("--" + key) > 0) overrides.emplace_back(key, values[key]);
  }

  try {
    const ineq::RunConfig cfg = ineq::parse_config(config_path, overrides);
    const ineq::ResultTable table = ineq::run_command(cfg);
    ineq::emit_table(table, cfg.format, cfg.out);
  } catch (const ineq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ineq::ReplicationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.numerical() ? 3 : 1;
  } catch (const ineq::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

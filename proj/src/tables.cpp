#include "ineq/tables.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ineq/limit_experiment.hpp"
#include "ineq/stochastic_dominance.hpp"
#include "ineq/translog.hpp"

namespace ineq {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_text(const std::vector<double>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + num(p[i]);
  return s;
}

ResultTable make_table(const RunConfig& cfg, std::vector<Column> columns) {
  ResultTable t;
  t.command = to_string(cfg.command);
  t.columns = std::move(columns);
  t.seed = cfg.seed;
  t.config_hash = cfg.hash();
  return t;
}

template <class T>
const std::vector<T>& or_default(const std::vector<T>& v, const std::vector<T>& fallback) {
  return v.empty() ? fallback : v;
}

SdConfig sd_config(const RunConfig& cfg, std::uint64_t default_draws) {
  SdConfig sd;
  sd.draws = cfg.draws.value_or(default_draws);
  sd.bootstrap = cfg.bootstrap;
  return sd;
}

std::string h0_name(SdNull n) { return n == SdNull::SD1 ? "SD1" : "non-SD1"; }

}  // namespace

ResultTable run_table1(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"h0"}, {"n"}, {"h"}, {"comparison"}, {"method"}, {"value", true}});
  const SdConfig sd = sd_config(cfg, defaults::table1_draws);
  const std::uint64_t dd_reps = cfg.dd_bootstrap.value_or(defaults::table1_dd_bootstrap);
  const SeedPlan root = SeedPlan(cfg.seed).child("table1");

  struct Row {
    SdNull null;
    int n;
    double h;
    std::string comparison, method;
    double value;
  };
  std::vector<Row> rows;
  for (int n : or_default(cfg.n, defaults::table1_n)) {
    if (n < 2) throw ConfigError("table1: n must be at least 2");
    for (double h : or_default(cfg.h, defaults::table1_h)) {
      const auto [x, y] = fixed_design_sample(n, h);
      const std::string key = "n=" + std::to_string(n) + ";h=" + num(h);
      const ReferenceCdf f0 = ReferenceCdf::uniform(0.0, 1.0);

      Rng r1 = root.child(key + ";unif;bayes").stream(0);
      const double post1 = posterior_prob_sd1(x, f0, sd, r1).estimate;
      Rng r2 = root.child(key + ";sample;bayes").stream(0);
      const double post2 = posterior_prob_sd1(x, SampleOpponent{y}, sd, r2).estimate;
      Rng r3 = root.child(key + ";sample;dd").stream(0);
      const double dd = dd_pvalue_nonsd1(x, y, dd_reps, r3).value;

      rows.push_back({SdNull::SD1, n, h, "unif", "ks", ks_pvalue_sd1(x, f0)});
      rows.push_back({SdNull::SD1, n, h, "unif", "bayes", post1});
      rows.push_back({SdNull::SD1, n, h, "sample", "ks", ks_pvalue_sd1(x, SampleOpponent{y})});
      rows.push_back({SdNull::SD1, n, h, "sample", "bayes", post2});
      rows.push_back({SdNull::NonSD1, n, h, "unif", "iu_beta", iu_beta_pvalue_nonsd1(x, f0)});
      rows.push_back({SdNull::NonSD1, n, h, "unif", "bayes", 1.0 - post1});
      rows.push_back({SdNull::NonSD1, n, h, "sample", "dd", dd});
      rows.push_back({SdNull::NonSD1, n, h, "sample", "iu_maxt", iu_maxt_pvalue_nonsd1(x, y).value});
      rows.push_back({SdNull::NonSD1, n, h, "sample", "bayes", 1.0 - post2});
    }
  }
  for (SdNull null : {SdNull::SD1, SdNull::NonSD1}) {
    for (const auto& r : rows) {
      if (r.null != null) continue;
      t.add_row({h0_name(r.null), std::int64_t{r.n}, r.h, r.comparison, r.method, r.value});
    }
  }
  return t;
}

ResultTable run_table2(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"h0"},
                                   {"n"},
                                   {"h"},
                                   {"comparison"},
                                   {"method"},
                                   {"alpha"},
                                   {"rate", true},
                                   {"mc_se"},
                                   {"reps"}});
  const SdConfig sd = sd_config(cfg, defaults::table2_draws);
  const SeedPlan root = SeedPlan(cfg.seed).child("table2");

  struct Row {
    SdNull null;
    int n;
    double h;
    std::string comparison, method;
    double alpha;
    McSummary s;
  };
  std::vector<Row> rows;
  for (double alpha : or_default(cfg.alpha, defaults::table2_alpha)) {
    for (int n : or_default(cfg.n, defaults::table2_n)) {
      for (double h : or_default(cfg.h, defaults::table2_h)) {
        for (bool two : {false, true}) {
          const SdDgp dgp{h, n, two};
          const std::string cmp = two ? "sample" : "unif";
          SdRpOptions opt;
          opt.reps = cfg.reps.value_or(defaults::table2_reps);
          opt.workers = cfg.workers;
          opt.dd_bootstrap = cfg.dd_bootstrap.value_or(defaults::table2_dd_bootstrap);
          // Every method in a cell sees the same simulated samples.
          opt.master_seed = root.child("n=" + std::to_string(n) + ";h=" + num(h) + ";" + cmp).master_seed();

          const auto [bayes_sd1, bayes_non] = sd_bayes_rejection_pair(dgp, alpha, sd, opt);
          rows.push_back({SdNull::SD1, n, h, cmp, "ks",
                          alpha, sd_rejection_probability(dgp, SdNull::SD1, SdMethod::Frequentist, alpha, sd, opt)});
          rows.push_back({SdNull::SD1, n, h, cmp, "bayes", alpha, bayes_sd1});
          rows.push_back({SdNull::NonSD1, n, h, cmp, two ? "dd" : "iu_beta", alpha,
                          sd_rejection_probability(dgp, SdNull::NonSD1, SdMethod::Frequentist, alpha, sd, opt)});
          if (two) {
            rows.push_back({SdNull::NonSD1, n, h, cmp, "iu_maxt", alpha,
                            sd_rejection_probability(dgp, SdNull::NonSD1, SdMethod::IuMaxT, alpha, sd, opt)});
          }
          rows.push_back({SdNull::NonSD1, n, h, cmp, "bayes", alpha, bayes_non});
        }
      }
    }
  }
  for (SdNull null : {SdNull::SD1, SdNull::NonSD1}) {
    for (const auto& r : rows) {
      if (r.null != null) continue;
      t.add_row({h0_name(r.null), std::int64_t{r.n}, r.h, r.comparison, r.method, r.alpha, r.s.estimate, r.s.mc_se,
                 static_cast<std::int64_t>(r.s.reps)});
    }
  }
  return t;
}

ResultTable run_table3(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"sigma_eps"},
                                   {"alpha"},
                                   {"rate", true},
                                   {"mc_se"},
                                   {"monotonicity_rate", true},
                                   {"reps"},
                                   {"draws"},
                                   {"redraws"}});
  const SeedPlan root = SeedPlan(cfg.seed).child("table3");
  const auto& alphas = or_default(cfg.alpha, defaults::table3_alpha);
  const int n = cfg.n.empty() ? defaults::table3_n : cfg.n.front();
  if (cfg.n.size() > 1) throw ConfigError("table3: a single n is expected");
  for (double se : or_default(cfg.sigma_eps, defaults::table3_sigma_eps)) {
    const TranslogDgp dgp = TranslogDgp::with(cfg.delta, se, cfg.sigma_x, n);
    TranslogSimOptions opt;
    opt.reps = cfg.reps.value_or(defaults::table3_reps);
    opt.draws = cfg.draws.value_or(defaults::table3_draws);
    opt.workers = cfg.workers;
    opt.master_seed = root.child("sigma_eps=" + num(se)).master_seed();
    const TranslogSimResult res = type1_error_sim(dgp, alphas, opt);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      t.add_row({se, alphas[a], res.rates[a].estimate, res.rates[a].mc_se, res.monotonicity.estimate,
                 static_cast<std::int64_t>(opt.reps), static_cast<std::int64_t>(opt.draws),
                 static_cast<std::int64_t>(res.redraws)});
    }
  }
  return t;
}

ResultTable run_kline(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"d"}, {"x"}, {"posterior", true}});
  const auto& ds = or_default(cfg.n, defaults::kline_d);
  const std::vector<double> xs = cfg.x.empty() ? std::vector<double>{defaults::kline_x} : cfg.x;
  if (xs.size() != 1 && xs.size() != ds.size()) {
    throw ConfigError("kline: give one x value or one per dimension in n");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double xv = xs.size() == 1 ? xs[0] : xs[i];
    const std::vector<double> x(static_cast<std::size_t>(ds[i]), xv);
    t.add_row({std::int64_t{ds[i]}, xv, kline_orthant_posterior(x)});
  }
  return t;
}

ResultTable run_sd_test(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"h0"}, {"comparison"}, {"method"}, {"value", true}, {"mc_se"}});
  if (cfg.data_x.empty()) throw ConfigError("sd-test: data-x is required");
  const std::vector<double> x = read_sample_file(cfg.data_x);
  const SdConfig sd = sd_config(cfg, defaults::sd_test_draws);
  const SeedPlan root = SeedPlan(cfg.seed).child("sd-test");
  Rng rb = root.child("bayes").stream(0);

  if (cfg.data_y.empty()) {
    const ReferenceCdf f0 = ReferenceCdf::uniform(0.0, 1.0);
    const McSummary post = posterior_prob_sd1(x, f0, sd, rb);
    t.add_row({"SD1", "unif", "ks", ks_pvalue_sd1(x, f0), 0.0});
    t.add_row({"SD1", "unif", "bayes", post.estimate, post.mc_se});
    t.add_row({"non-SD1", "unif", "iu_beta", iu_beta_pvalue_nonsd1(x, f0), 0.0});
    t.add_row({"non-SD1", "unif", "bayes", 1.0 - post.estimate, post.mc_se});
    return t;
  }
  const std::vector<double> y = read_sample_file(cfg.data_y);
  const McSummary post = posterior_prob_sd1(x, SampleOpponent{y}, sd, rb);
  Rng rd = root.child("dd").stream(0);
  const GridPValue dd = dd_pvalue_nonsd1(x, y, cfg.dd_bootstrap.value_or(defaults::table1_dd_bootstrap), rd);
  t.add_row({"SD1", "sample", "ks", ks_pvalue_sd1(x, SampleOpponent{y}), 0.0});
  t.add_row({"SD1", "sample", "bayes", post.estimate, post.mc_se});
  t.add_row({"non-SD1", "sample", "dd", dd.value, 0.0});
  t.add_row({"non-SD1", "sample", "iu_maxt", iu_maxt_pvalue_nonsd1(x, y).value, 0.0});
  t.add_row({"non-SD1", "sample", "bayes", 1.0 - post.estimate, post.mc_se});
  return t;
}

ResultTable run_limit(const RunConfig& cfg) {
  ResultTable t = make_table(cfg, {{"kind"},
                                   {"alpha"},
                                   {"theta"},
                                   {"status"},
                                   {"value", true},
                                   {"mc_se"},
                                   {"reps"},
                                   {"exact", true}});
  if (cfg.region.empty()) throw ConfigError("limit: region is required");
  const NullRegion region = parse_region(cfg.region);

  std::size_t dim = region.dim();
  if (dim == 0) dim = cfg.theta.empty() ? cfg.x.size() : cfg.theta.front().size();
  if (dim == 0) throw ConfigError("limit: cannot infer the dimension; give theta or x");
  Experiment exp = Experiment::standard(static_cast<Eigen::Index>(dim));
  if (cfg.corr) {
    if (dim != 2) throw ConfigError("limit: corr applies to two-dimensional regions only");
    exp.cov = CovarianceMatrix::bivariate(*cfg.corr);
  }
  std::vector<std::vector<double>> points = cfg.theta;
  if (points.empty()) points.push_back(std::vector<double>(dim, 0.0));
  for (const auto& p : points) {
    if (p.size() != dim) throw ConfigError("limit: every theta point must have dimension " + std::to_string(dim));
  }
  if (!cfg.x.empty() && cfg.x.size() != dim) throw ConfigError("limit: x must have dimension " + std::to_string(dim));

  RpOptions opt;
  opt.reps = cfg.reps.value_or(defaults::limit_reps);
  opt.draws = cfg.draws.value_or(defaults::limit_draws);
  opt.workers = cfg.workers;
  const SeedPlan root = SeedPlan(cfg.seed).child("limit");
  const auto* hs = std::get_if<HalfSpace>(&region.variant());

  if (!cfg.x.empty()) {
    Rng rng = root.child("posterior").stream(0);
    const McSummary post = posterior_prob_region(region, cfg.x, exp, opt.draws, rng);
    const auto exact = posterior_prob_closed_form(region, cfg.x, exp);
    t.add_row({"posterior", std::string("NA"), point_text(cfg.x), region.contains(cfg.x) ? "null" : "alternative",
               post.estimate, post.mc_se, static_cast<std::int64_t>(post.reps),
               exact ? Cell{*exact} : Cell{std::string("NA")}});
  }

  for (double alpha : or_default(cfg.alpha, defaults::limit_alpha)) {
    const SeedPlan plan = root.child("alpha=" + num(alpha));
    bool all_null = true;
    double best = -1.0;
    McSummary best_s;
    std::string best_point;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& p = points[k];
      const bool member = region.contains(p);
      const bool closure = member || in_closure(region, p);
      all_null = all_null && closure;
      opt.master_seed = plan.child(static_cast<std::uint64_t>(k)).master_seed();
      const McSummary s = rejection_probability(region, p, exp, alpha, opt);
      Cell exact = std::string("NA");
      if (hs) exact = halfspace_rejection_probability(*hs, p, exp, alpha);
      t.add_row({"rp", alpha, point_text(p), member ? "null" : (closure ? "closure" : "alternative"), s.estimate,
                 s.mc_se, static_cast<std::int64_t>(s.reps), exact});
      if (s.estimate > best) {
        best = s.estimate;
        best_s = s;
        best_point = point_text(p);
      }
    }
    if (all_null) {
      t.add_row({"size", alpha, best_point, "grid_max", best_s.estimate, best_s.mc_se,
                 static_cast<std::int64_t>(best_s.reps), std::string("NA")});
    }
  }
  return t;
}

ResultTable run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Table1: return run_table1(cfg);
    case Command::Table2: return run_table2(cfg);
    case Command::Table3: return run_table3(cfg);
    case Command::Kline: return run_kline(cfg);
    case Command::SdTest: return run_sd_test(cfg);
    case Command::Limit: return run_limit(cfg);
  }
  throw ConfigError("unknown command");
}

}  // namespace ineq

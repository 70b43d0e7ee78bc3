#include "ineq/stochastic_dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace ineq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonempty(std::span<const double> s, const char* what) {
  if (s.empty()) throw std::invalid_argument(std::string(what) + ": sample must be nonempty");
  for (double v : s) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": sample has a non-finite value");
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

std::vector<double> sorted_copy(std::span<const double> s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

// Flat Dirichlet weights; a single weight is 1 and consumes no randomness.
void fill_weights(std::span<double> w, Rng& rng) {
  if (w.size() == 1) {
    w[0] = 1.0;
    return;
  }
  dirichlet_flat_fill(w, rng);
}

// cum[0] = 0, cum[i] = w_0 + ... + w_{i-1}, last entry pinned to 1.
void cumulate(std::span<const double> w, std::vector<double>& cum) {
  cum.resize(w.size() + 1);
  cum[0] = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) cum[i + 1] = cum[i] + w[i];
  cum.back() = 1.0;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------- EcdfLike

EcdfLike::EcdfLike(Kind kind, std::vector<double> knots, std::vector<double> values)
    : kind_(kind), knots_(std::move(knots)), values_(std::move(values)) {}

EcdfLike EcdfLike::step(std::vector<double> support, std::vector<double> cumulative) {
  if (support.empty() || support.size() != cumulative.size()) {
    throw std::invalid_argument("EcdfLike::step: support and cumulative weights must be nonempty and aligned");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) throw std::invalid_argument("EcdfLike::step: non-finite support point");
    if (i > 0 && !(support[i - 1] < support[i])) {
      throw std::invalid_argument("EcdfLike::step: support must be strictly increasing");
    }
    const double prev = i > 0 ? cumulative[i - 1] : 0.0;
    if (!(cumulative[i] >= prev) || cumulative[i] > 1.0 + 1e-12) {
      throw std::invalid_argument("EcdfLike::step: cumulative weights must be nondecreasing in [0, 1]");
    }
  }
  if (std::abs(cumulative.back() - 1.0) > 1e-12) throw std::invalid_argument("EcdfLike::step: total mass must be 1");
  cumulative.back() = 1.0;
  return EcdfLike(Kind::Step, std::move(support), std::move(cumulative));
}

EcdfLike EcdfLike::piecewise_linear(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw std::invalid_argument("EcdfLike::piecewise_linear: need at least two aligned knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) throw std::invalid_argument("EcdfLike::piecewise_linear: non-finite knot");
    if (i > 0 && (knots[i] < knots[i - 1] || values[i] < values[i - 1])) {
      throw std::invalid_argument("EcdfLike::piecewise_linear: knots and values must be nondecreasing");
    }
  }
  if (values.front() < 0.0 || std::abs(values.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("EcdfLike::piecewise_linear: values must run from >= 0 to 1");
  }
  values.back() = 1.0;
  return EcdfLike(Kind::PiecewiseLinear, std::move(knots), std::move(values));
}

double EcdfLike::operator()(double t) const {
  if (kind_ == Kind::Step) {
    const auto c = std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin();
    return c == 0 ? 0.0 : values_[static_cast<std::size_t>(c - 1)];
  }
  if (t < knots_.front()) return 0.0;
  if (t >= knots_.back()) return values_.back();
  const auto j = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin() - 1);
  const double lambda = (t - knots_[j]) / (knots_[j + 1] - knots_[j]);
  return values_[j] + lambda * (values_[j + 1] - values_[j]);
}

double EcdfLike::left_limit(double t) const {
  if (kind_ == Kind::Step) {
    const auto c = std::lower_bound(knots_.begin(), knots_.end(), t) - knots_.begin();
    return c == 0 ? 0.0 : values_[static_cast<std::size_t>(c - 1)];
  }
  if (t <= knots_.front()) return 0.0;
  if (t > knots_.back()) return values_.back();
  const auto j = static_cast<std::size_t>(std::lower_bound(knots_.begin(), knots_.end(), t) - knots_.begin() - 1);
  const double lambda = (t - knots_[j]) / (knots_[j + 1] - knots_[j]);
  return values_[j] + lambda * (values_[j + 1] - values_[j]);
}

EcdfLike ecdf(std::span<const double> sample) {
  require_nonempty(sample, "ecdf");
  const auto s = sorted_copy(sample);
  const double n = static_cast<double>(s.size());
  std::vector<double> support;
  std::vector<double> cum;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
    support.push_back(s[i]);
    cum.push_back(static_cast<double>(i + 1) / n);
  }
  return EcdfLike::step(std::move(support), std::move(cum));
}

std::pair<std::vector<double>, std::vector<double>> fixed_design_sample(int n, double h) {
  if (n < 2) throw std::invalid_argument("fixed_design_sample: n must be at least 2");
  if (!std::isfinite(h)) throw std::invalid_argument("fixed_design_sample: h must be finite");
  const double shift = h / std::sqrt(static_cast<double>(n));
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n - 1));
  for (int i = 1; i <= n; ++i) x[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / (n + 1) + shift;
  for (int i = 1; i < n; ++i) y[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / n;
  return {std::move(x), std::move(y)};
}

std::vector<double> banks_knots(std::span<const double> sample) {
  require_nonempty(sample, "banks_knots");
  if (sample.size() < 2) throw std::invalid_argument("banks_knots: need at least two observations");
  const auto s = sorted_copy(sample);
  const double spacing = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  std::vector<double> k;
  k.reserve(s.size() + 2);
  k.push_back(s.front() - spacing);
  k.insert(k.end(), s.begin(), s.end());
  k.push_back(s.back() + spacing);
  return k;
}

EcdfLike bb_draw(std::span<const double> sample, BootstrapVariant variant, Rng& rng) {
  require_nonempty(sample, "bb_draw");
  if (variant == BootstrapVariant::Rubin || sample.size() == 1) {
    const auto s = sorted_copy(sample);
    std::vector<double> w(s.size());
    fill_weights(w, rng);
    std::vector<double> cum;
    cumulate(w, cum);
    std::vector<double> support;
    std::vector<double> values;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
      support.push_back(s[i]);
      values.push_back(cum[i + 1]);
    }
    return EcdfLike::step(std::move(support), std::move(values));
  }
  auto knots = banks_knots(sample);
  std::vector<double> w(knots.size() - 1);
  fill_weights(w, rng);
  std::vector<double> cum;
  cumulate(w, cum);
  return EcdfLike::piecewise_linear(std::move(knots), std::move(cum));
}

ReferenceCdf ReferenceCdf::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("ReferenceCdf::uniform: need finite lo < hi");
  }
  return ReferenceCdf{[lo, hi](double t) { return std::clamp((t - lo) / (hi - lo), 0.0, 1.0); },
                      {lo, hi},
                      "uniform"};
}

// ---------------------------------------------------------------- posterior

namespace {

// Evaluation of a weight-driven CDF draw at a fixed point:
// value = (1 - lambda) * cum[idx] + lambda * cum[idx + 1].
struct Probe {
  std::size_t idx = 0;
  double lambda = 0.0;
};

// Fixed structure of one sample's posterior draws: knots never change, only
// the weights do, so every grid lookup is resolved once up front.
class DrawPlan {
 public:
  DrawPlan(std::span<const double> sample, BootstrapVariant variant) {
    if (variant == BootstrapVariant::Banks && sample.size() >= 2) {
      linear_ = true;
      knots_ = banks_knots(sample);
      weights_ = knots_.size() - 1;
      for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i] == knots_[i - 1]) has_jumps_ = true;
      }
    } else {
      knots_ = sorted_copy(sample);
      weights_ = knots_.size();
      has_jumps_ = true;
    }
    w_.resize(weights_);
  }

  const std::vector<double>& knots() const { return knots_; }
  bool has_jumps() const { return has_jumps_; }

  Probe right(double t) const {
    if (!linear_) {
      return {static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin()), 0.0};
    }
    if (t < knots_.front()) return {0, 0.0};
    if (t >= knots_.back()) return {weights_, 0.0};
    const auto j = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin() - 1);
    return {j, (t - knots_[j]) / (knots_[j + 1] - knots_[j])};
  }

  Probe left(double t) const {
    if (!linear_) {
      return {static_cast<std::size_t>(std::lower_bound(knots_.begin(), knots_.end(), t) - knots_.begin()), 0.0};
    }
    if (t <= knots_.front()) return {0, 0.0};
    if (t > knots_.back()) return {weights_, 0.0};
    const auto j = static_cast<std::size_t>(std::lower_bound(knots_.begin(), knots_.end(), t) - knots_.begin() - 1);
    return {j, (t - knots_[j]) / (knots_[j + 1] - knots_[j])};
  }

  void draw(Rng& rng) {
    fill_weights(w_, rng);
    cumulate(w_, cum_);
  }

  double value(const Probe& p) const {
    if (p.lambda == 0.0) return cum_[p.idx];
    return (1.0 - p.lambda) * cum_[p.idx] + p.lambda * cum_[p.idx + 1];
  }

 private:
  bool linear_ = false;
  bool has_jumps_ = false;
  std::vector<double> knots_;
  std::size_t weights_ = 0;
  std::vector<double> w_;
  std::vector<double> cum_;
};

std::vector<double> refine_grid(std::vector<double> grid, int refine) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (refine <= 0 || grid.size() < 2) return grid;
  std::vector<double> out;
  out.reserve(grid.size() * static_cast<std::size_t>(refine + 1));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    out.push_back(grid[i]);
    for (int r = 1; r <= refine; ++r) {
      out.push_back(grid[i] + (grid[i + 1] - grid[i]) * r / (refine + 1));
    }
  }
  out.push_back(grid.back());
  return out;
}

std::uint64_t count_sd1_draws(std::span<const double> x, const Opponent& opponent, const SdConfig& cfg, Rng& rng) {
  require_nonempty(x, "posterior_prob_sd1");
  if (cfg.draws == 0) throw std::invalid_argument("posterior_prob_sd1: draws must be positive");
  if (cfg.refine < 0) throw std::invalid_argument("posterior_prob_sd1: refine must be nonnegative");
  if (!(cfg.tol >= 0.0)) throw std::invalid_argument("posterior_prob_sd1: tol must be nonnegative");

  DrawPlan px(x, cfg.bootstrap);
  const auto* ref = std::get_if<ReferenceCdf>(&opponent);
  const auto* other = std::get_if<SampleOpponent>(&opponent);
  std::optional<DrawPlan> py;

  std::vector<double> grid = px.knots();
  if (ref) {
    if (!ref->cdf) throw std::invalid_argument("posterior_prob_sd1: reference CDF is empty");
    grid.insert(grid.end(), ref->breakpoints.begin(), ref->breakpoints.end());
  } else {
    require_nonempty(other->values, "posterior_prob_sd1");
    py.emplace(other->values, cfg.bootstrap);
    grid.insert(grid.end(), py->knots().begin(), py->knots().end());
  }
  grid = refine_grid(std::move(grid), cfg.refine);
  const bool check_left = px.has_jumps() || (py && py->has_jumps());

  const std::size_t g = grid.size();
  std::vector<Probe> xr(g), xl(g), yr(g), yl(g);
  std::vector<double> f0(g);
  for (std::size_t i = 0; i < g; ++i) {
    xr[i] = px.right(grid[i]);
    xl[i] = px.left(grid[i]);
    if (ref) {
      f0[i] = ref->cdf(grid[i]);
    } else {
      yr[i] = py->right(grid[i]);
      yl[i] = py->left(grid[i]);
    }
  }

  std::uint64_t hits = 0;
  for (std::uint64_t d = 0; d < cfg.draws; ++d) {
    px.draw(rng);
    if (py) py->draw(rng);
    bool dominated = true;
    for (std::size_t i = 0; i < g && dominated; ++i) {
      const double oppr = ref ? f0[i] : py->value(yr[i]);
      if (px.value(xr[i]) > oppr + cfg.tol) dominated = false;
      if (check_left && dominated) {
        const double oppl = ref ? f0[i] : py->value(yl[i]);
        if (px.value(xl[i]) > oppl + cfg.tol) dominated = false;
      }
    }
    if (dominated) ++hits;
  }
  return hits;
}

}  // namespace

McSummary posterior_prob_sd1(std::span<const double> x, const Opponent& opponent, const SdConfig& cfg, Rng& rng) {
  return summarize(count_sd1_draws(x, opponent, cfg, rng), cfg.draws, 0);
}

McSummary posterior_prob_nonsd1(std::span<const double> x, const Opponent& opponent, const SdConfig& cfg,
                                Rng& rng) {
  McSummary s = posterior_prob_sd1(x, opponent, cfg, rng);
  s.estimate = 1.0 - s.estimate;
  return s;
}

// ---------------------------------------------------------------- frequentist

double ks_pvalue_sd1(std::span<const double> x, const Opponent& opponent) {
  require_nonempty(x, "ks_pvalue_sd1");
  const auto xs = sorted_copy(x);
  const double n = static_cast<double>(xs.size());
  double dplus = 0.0;
  double scale = n;

  std::visit(overloaded{
                 [&](const ReferenceCdf& f0) {
                   if (!f0.cdf) throw std::invalid_argument("ks_pvalue_sd1: reference CDF is empty");
                   for (std::size_t i = 0; i < xs.size(); ++i) {
                     dplus = std::max(dplus, static_cast<double>(i + 1) / n - clamp01(f0.cdf(xs[i])));
                   }
                 },
                 [&](const SampleOpponent& y) {
                   require_nonempty(y.values, "ks_pvalue_sd1");
                   const auto ys = sorted_copy(y.values);
                   const double m = static_cast<double>(ys.size());
                   std::size_t i = 0;
                   std::size_t j = 0;
                   while (i < xs.size() || j < ys.size()) {
                     const double t = (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j])) ? xs[i] : ys[j];
                     while (i < xs.size() && xs[i] <= t) ++i;
                     while (j < ys.size() && ys[j] <= t) ++j;
                     dplus = std::max(dplus, static_cast<double>(i) / n - static_cast<double>(j) / m);
                   }
                   scale = n * m / (n + m);
                 },
             },
             opponent);
  return std::exp(-2.0 * scale * dplus * dplus);
}

double iu_beta_pvalue_nonsd1(std::span<const double> x, const ReferenceCdf& f0) {
  require_nonempty(x, "iu_beta_pvalue_nonsd1");
  if (!f0.cdf) throw std::invalid_argument("iu_beta_pvalue_nonsd1: reference CDF is empty");
  const auto xs = sorted_copy(x);
  const std::size_t n = xs.size();
  double p = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double u = clamp01(f0.cdf(xs[k - 1]));
    // Pr(Beta(k, n+1-k) >= u) via the reflected Beta(n+1-k, k) law.
    const double pk = beta_cdf(1.0 - u, static_cast<double>(n + 1 - k), static_cast<double>(k));
    p = std::max(p, pk);
  }
  return p;
}

namespace {

// Pooled distinct values with per-sample counts, the common structure of the
// min-t statistic and its bootstrap.
struct PooledGrid {
  std::vector<double> points;
  std::vector<std::size_t> pos_x;  // grid index of each sorted x
  std::vector<std::size_t> pos_y;
};

PooledGrid pool(const std::vector<double>& xs, const std::vector<double>& ys) {
  PooledGrid g;
  g.points.reserve(xs.size() + ys.size());
  g.points.insert(g.points.end(), xs.begin(), xs.end());
  g.points.insert(g.points.end(), ys.begin(), ys.end());
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  auto locate = [&](const std::vector<double>& s, std::vector<std::size_t>& pos) {
    pos.resize(s.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      while (g.points[k] < s[i]) ++k;
      pos[i] = k;
    }
  };
  locate(xs, g.pos_x);
  locate(ys, g.pos_y);
  return g;
}

// min t over grid points from per-point counts.
MinT min_t_from_counts(const std::vector<double>& points, const std::vector<std::uint32_t>& cx,
                       const std::vector<std::uint32_t>& cy, double n, double m) {
  MinT best{std::numeric_limits<double>::infinity(), 0.0, false};
  std::uint64_t ax = 0;
  std::uint64_t ay = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    ax += cx[k];
    ay += cy[k];
    const double fx = static_cast<double>(ax) / n;
    const double fy = static_cast<double>(ay) / m;
    if (!(fx > 0.0 && fx < 1.0 && fy > 0.0 && fy < 1.0)) continue;
    const double t = (fy - fx) / std::sqrt(fx * (1.0 - fx) / n + fy * (1.0 - fy) / m);
    if (t < best.t) best = MinT{t, points[k], true};
  }
  if (!best.valid) best.t = 0.0;
  return best;
}

std::vector<std::uint32_t> counts_at(std::size_t size, const std::vector<std::size_t>& pos) {
  std::vector<std::uint32_t> c(size, 0);
  for (auto p : pos) ++c[p];
  return c;
}

}  // namespace

MinT min_t_statistic(std::span<const double> x, std::span<const double> y) {
  require_nonempty(x, "min_t_statistic");
  require_nonempty(y, "min_t_statistic");
  const auto xs = sorted_copy(x);
  const auto ys = sorted_copy(y);
  const PooledGrid g = pool(xs, ys);
  return min_t_from_counts(g.points, counts_at(g.points.size(), g.pos_x), counts_at(g.points.size(), g.pos_y),
                           static_cast<double>(xs.size()), static_cast<double>(ys.size()));
}

GridPValue iu_maxt_pvalue_nonsd1(std::span<const double> x, std::span<const double> y) {
  const MinT mt = min_t_statistic(x, y);
  if (!mt.valid) return GridPValue{1.0, true};
  return GridPValue{std_normal_cdf(-mt.t), false};
}

GridPValue dd_pvalue_nonsd1(std::span<const double> x, std::span<const double> y, std::uint64_t reps, Rng& rng) {
  require_nonempty(x, "dd_pvalue_nonsd1");
  require_nonempty(y, "dd_pvalue_nonsd1");
  if (reps == 0) throw std::invalid_argument("dd_pvalue_nonsd1: bootstrap reps must be positive");
  const auto xs = sorted_copy(x);
  const auto ys = sorted_copy(y);
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  const PooledGrid g = pool(xs, ys);
  const std::size_t size = g.points.size();

  const MinT obs = min_t_from_counts(g.points, counts_at(size, g.pos_x), counts_at(size, g.pos_y), n, m);
  if (!obs.valid) return GridPValue{1.0, true};
  if (obs.t <= 0.0) return GridPValue{1.0, false};

  // Least favourable null: pull both CDFs to the pooled value at the argmin.
  const auto below_x = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), obs.at) - xs.begin());
  const auto below_y = static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), obs.at) - ys.begin());
  const double pi = static_cast<double>(below_x + below_y) / (n + m);

  std::binomial_distribution<std::uint64_t> bin_x(xs.size(), pi);
  std::binomial_distribution<std::uint64_t> bin_y(ys.size(), pi);
  std::uniform_int_distribution<std::size_t> lo_x(0, below_x - 1), hi_x(below_x, xs.size() - 1);
  std::uniform_int_distribution<std::size_t> lo_y(0, below_y - 1), hi_y(below_y, ys.size() - 1);

  std::vector<std::uint32_t> cx(size), cy(size);
  std::uint64_t exceed = 0;
  for (std::uint64_t b = 0; b < reps; ++b) {
    std::fill(cx.begin(), cx.end(), 0);
    std::fill(cy.begin(), cy.end(), 0);
    const std::uint64_t kx = bin_x(rng);
    for (std::uint64_t i = 0; i < xs.size(); ++i) ++cx[g.pos_x[i < kx ? lo_x(rng) : hi_x(rng)]];
    const std::uint64_t ky = bin_y(rng);
    for (std::uint64_t i = 0; i < ys.size(); ++i) ++cy[g.pos_y[i < ky ? lo_y(rng) : hi_y(rng)]];
    const MinT star = min_t_from_counts(g.points, cx, cy, n, m);
    if (star.valid && star.t >= obs.t) ++exceed;
  }
  return GridPValue{static_cast<double>(1 + exceed) / static_cast<double>(reps + 1), false};
}

// ---------------------------------------------------------------- simulation

std::pair<std::vector<double>, std::vector<double>> draw_sd_dgp(const SdDgp& dgp, Rng& rng) {
  if (dgp.n < 1) throw std::invalid_argument("draw_sd_dgp: n must be positive");
  if (!std::isfinite(dgp.h)) throw std::invalid_argument("draw_sd_dgp: h must be finite");
  const double shift = dgp.h / std::sqrt(static_cast<double>(dgp.n));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(dgp.n));
  for (auto& v : x) v = shift + unif(rng);
  std::vector<double> y;
  if (dgp.two_sample) {
    y.resize(static_cast<std::size_t>(dgp.n));
    for (auto& v : y) v = unif(rng);
  }
  return {std::move(x), std::move(y)};
}

namespace {

Opponent make_opponent(const SdDgp& dgp, std::vector<double> y) {
  if (dgp.two_sample) return SampleOpponent{std::move(y)};
  return ReferenceCdf::uniform(0.0, 1.0);
}

}  // namespace

McSummary sd_rejection_probability(const SdDgp& dgp, SdNull null, SdMethod method, double alpha,
                                   const SdConfig& cfg, const SdRpOptions& options) {
  require_alpha(alpha);
  if (options.reps == 0) throw std::invalid_argument("sd_rejection_probability: reps must be positive");
  if (method == SdMethod::IuMaxT && (null != SdNull::NonSD1 || !dgp.two_sample)) {
    throw std::invalid_argument("sd_rejection_probability: the max-t test is two-sample and non-SD1 only");
  }
  const SeedPlan plan(options.master_seed);
  auto hits = map_replications<std::uint8_t>(options.reps, plan, options.workers, [&](std::uint64_t, Rng& rng) {
    auto [x, y] = draw_sd_dgp(dgp, rng);
    bool reject = false;
    switch (method) {
      case SdMethod::Bayesian: {
        const double post = posterior_prob_sd1(x, make_opponent(dgp, y), cfg, rng).estimate;
        reject = null == SdNull::SD1 ? post <= alpha : 1.0 - post <= alpha;
        break;
      }
      case SdMethod::Frequentist:
        if (null == SdNull::SD1) {
          reject = ks_pvalue_sd1(x, make_opponent(dgp, y)) <= alpha;
        } else if (dgp.two_sample) {
          reject = dd_pvalue_nonsd1(x, y, options.dd_bootstrap, rng).value <= alpha;
        } else {
          reject = iu_beta_pvalue_nonsd1(x, ReferenceCdf::uniform(0.0, 1.0)) <= alpha;
        }
        break;
      case SdMethod::IuMaxT:
        reject = iu_maxt_pvalue_nonsd1(x, y).value <= alpha;
        break;
    }
    return static_cast<std::uint8_t>(reject);
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return summarize(total, options.reps, options.master_seed);
}

std::pair<McSummary, McSummary> sd_bayes_rejection_pair(const SdDgp& dgp, double alpha, const SdConfig& cfg,
                                                        const SdRpOptions& options) {
  require_alpha(alpha);
  if (options.reps == 0) throw std::invalid_argument("sd_bayes_rejection_pair: reps must be positive");
  const SeedPlan plan(options.master_seed);
  auto bits = map_replications<std::uint8_t>(options.reps, plan, options.workers, [&](std::uint64_t, Rng& rng) {
    auto [x, y] = draw_sd_dgp(dgp, rng);
    const double post = posterior_prob_sd1(x, make_opponent(dgp, y), cfg, rng).estimate;
    return static_cast<std::uint8_t>((post <= alpha ? 1 : 0) | (1.0 - post <= alpha ? 2 : 0));
  });
  std::uint64_t sd1 = 0;
  std::uint64_t non = 0;
  for (auto b : bits) {
    sd1 += b & 1;
    non += (b >> 1) & 1;
  }
  return {summarize(sd1, options.reps, options.master_seed), summarize(non, options.reps, options.master_seed)};
}

}  // namespace ineq

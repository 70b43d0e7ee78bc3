#include "ineq/limit_experiment.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ineq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(std::span<const double> v, std::size_t d, const char* what) {
  if (v.size() != d) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(d) + ", got " +
                                std::to_string(v.size()));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

// Pr(lo <= theta <= hi) for theta ~ N(mean, sd^2), keeping precision in both tails.
double normal_interval_prob(const SymmetricLocationFamily& f, double mean, double sd, double lo, double hi) {
  if (sd == 0.0) return (lo <= mean && mean <= hi) ? 1.0 : 0.0;
  const double a = (lo - mean) / sd;
  const double b = (hi - mean) / sd;
  if (a > 0.0) return f.cdf(-a) - f.cdf(-b);
  return f.cdf(b) - f.cdf(a);
}

}  // namespace

NullRegion NullRegion::half_space(std::vector<double> direction, double offset) {
  if (direction.empty()) throw std::invalid_argument("half-space direction must be non-empty");
  bool nonzero = false;
  for (double c : direction) {
    if (!std::isfinite(c)) throw std::invalid_argument("half-space direction must be finite");
    nonzero = nonzero || c != 0.0;
  }
  if (!nonzero) throw std::invalid_argument("half-space direction must be nonzero");
  if (!std::isfinite(offset)) throw std::invalid_argument("half-space offset must be finite");
  return NullRegion(HalfSpace{std::move(direction), offset});
}

NullRegion NullRegion::lower_half_line(double bound) {
  if (std::isnan(bound)) throw std::invalid_argument("half-line bound is NaN");
  return NullRegion(LowerHalfLine{bound});
}

NullRegion NullRegion::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("box bounds must be non-empty and of equal length");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("box bound " + std::to_string(j) + " is empty or NaN");
    }
  }
  return NullRegion(Box{std::move(lower), std::move(upper)});
}

NullRegion NullRegion::orthant(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("orthant dimension must be positive");
  return box(std::vector<double>(dim, 0.0), std::vector<double>(dim, std::numeric_limits<double>::infinity()));
}

NullRegion NullRegion::interval_union(std::vector<Interval> intervals) {
  if (intervals.empty()) throw std::invalid_argument("interval union must contain an interval");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) {
      throw std::invalid_argument("interval " + std::to_string(i) + " is empty or NaN");
    }
    if (i > 0 && !(intervals[i - 1].hi < iv.lo)) {
      throw std::invalid_argument("intervals must be sorted and disjoint");
    }
  }
  return NullRegion(IntervalUnion{std::move(intervals)});
}

NullRegion NullRegion::sign_agreement() { return NullRegion(SignAgreement{}); }

NullRegion NullRegion::complement(NullRegion inner) {
  return NullRegion(Complement{std::make_shared<const NullRegion>(std::move(inner))});
}

NullRegion NullRegion::predicate(std::function<bool(std::span<const double>)> test, std::size_t dim,
                                 std::string description) {
  if (!test) throw std::invalid_argument("predicate must be callable");
  return NullRegion(Predicate{std::move(test), dim, std::move(description)});
}

std::size_t NullRegion::dim() const {
  return std::visit(overloaded{
                        [](const HalfSpace& r) { return r.direction.size(); },
                        [](const LowerHalfLine&) { return std::size_t{1}; },
                        [](const Box& r) { return r.lower.size(); },
                        [](const IntervalUnion&) { return std::size_t{1}; },
                        [](const SignAgreement&) { return std::size_t{2}; },
                        [](const Complement& r) { return r.inner->dim(); },
                        [](const Predicate& r) { return r.dim; },
                    },
                    v_);
}

bool NullRegion::contains(std::span<const double> theta) const {
  const std::size_t d = dim();
  if (d != 0) require_dim(theta, d, "NullRegion::contains");
  return std::visit(overloaded{
                        [&](const HalfSpace& r) {
                          double s = 0.0;
                          for (std::size_t j = 0; j < d; ++j) s += r.direction[j] * theta[j];
                          return s <= r.offset;
                        },
                        [&](const LowerHalfLine& r) { return theta[0] <= r.bound; },
                        [&](const Box& r) {
                          for (std::size_t j = 0; j < d; ++j) {
                            if (theta[j] < r.lower[j] || theta[j] > r.upper[j]) return false;
                          }
                          return true;
                        },
                        [&](const IntervalUnion& r) {
                          for (const auto& iv : r.intervals) {
                            if (iv.lo <= theta[0] && theta[0] <= iv.hi) return true;
                          }
                          return false;
                        },
                        [&](const SignAgreement&) { return theta[0] * theta[1] >= 0.0; },
                        [&](const Complement& r) { return !r.inner->contains(theta); },
                        [&](const Predicate& r) { return r.test(theta); },
                    },
                    v_);
}

std::string NullRegion::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const HalfSpace& r) {
                   os << "halfspace:";
                   for (std::size_t j = 0; j < r.direction.size(); ++j) os << (j ? "," : "") << r.direction[j];
                   os << ":" << r.offset;
                 },
                 [&](const LowerHalfLine& r) { os << "halfline:" << r.bound; },
                 [&](const Box& r) {
                   os << "box:";
                   for (std::size_t j = 0; j < r.lower.size(); ++j) {
                     os << (j ? "," : "") << r.lower[j] << ".." << r.upper[j];
                   }
                 },
                 [&](const IntervalUnion& r) {
                   os << "interval:";
                   for (std::size_t i = 0; i < r.intervals.size(); ++i) {
                     os << (i ? "|" : "") << "[" << r.intervals[i].lo << "," << r.intervals[i].hi << "]";
                   }
                 },
                 [&](const SignAgreement&) { os << "signagree"; },
                 [&](const Complement& r) { os << "complement(" << r.inner->describe() << ")"; },
                 [&](const Predicate& r) { os << r.description; },
             },
             v_);
  return os.str();
}

double posterior_prob_halfspace(const HalfSpace& region, std::span<const double> x, const Experiment& exp) {
  require_dim(x, region.direction.size(), "posterior_prob_halfspace");
  if (static_cast<Eigen::Index>(x.size()) != exp.dim()) {
    throw std::invalid_argument("posterior_prob_halfspace: experiment dimension mismatch");
  }
  const double var = exp.cov.quadratic_form(region.direction);
  if (!(var > 0.0)) throw NumericalError("posterior_prob_halfspace: degenerate direction (c' Sigma c = 0)");
  double cx = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) cx += region.direction[j] * x[j];
  return exp.family.cdf((region.offset - cx) / std::sqrt(var));
}

std::optional<double> posterior_prob_closed_form(const NullRegion& region, std::span<const double> x,
                                                 const Experiment& exp) {
  const auto& f = exp.family;
  const auto& sigma = exp.cov.entries();
  return std::visit(
      overloaded{
          [&](const HalfSpace& r) -> std::optional<double> { return posterior_prob_halfspace(r, x, exp); },
          [&](const LowerHalfLine& r) -> std::optional<double> {
            return normal_interval_prob(f, x[0], std::sqrt(sigma(0, 0)), -std::numeric_limits<double>::infinity(),
                                        r.bound);
          },
          [&](const IntervalUnion& r) -> std::optional<double> {
            const double sd = std::sqrt(sigma(0, 0));
            double p = 0.0;
            for (const auto& iv : r.intervals) p += normal_interval_prob(f, x[0], sd, iv.lo, iv.hi);
            return std::min(p, 1.0);
          },
          [&](const Box& r) -> std::optional<double> {
            if (!exp.cov.is_diagonal()) return std::nullopt;
            double p = 1.0;
            for (std::size_t j = 0; j < r.lower.size(); ++j) {
              p *= normal_interval_prob(f, x[j], std::sqrt(sigma(j, j)), r.lower[j], r.upper[j]);
            }
            return p;
          },
          [&](const SignAgreement&) -> std::optional<double> {
            if (!exp.cov.is_diagonal() || !(sigma(0, 0) > 0.0) || !(sigma(1, 1) > 0.0)) return std::nullopt;
            const double p1 = f.cdf(x[0] / std::sqrt(sigma(0, 0)));
            const double p2 = f.cdf(x[1] / std::sqrt(sigma(1, 1)));
            return p1 * p2 + (1.0 - p1) * (1.0 - p2);
          },
          [&](const Complement& r) -> std::optional<double> {
            auto inner = posterior_prob_closed_form(*r.inner, x, exp);
            if (!inner) return std::nullopt;
            return 1.0 - *inner;
          },
          [&](const Predicate&) -> std::optional<double> { return std::nullopt; },
      },
      region.variant());
}

McSummary posterior_prob_region(const NullRegion& region, std::span<const double> x, const Experiment& exp,
                                std::uint64_t draws, Rng& rng) {
  if (static_cast<Eigen::Index>(x.size()) != exp.dim()) {
    throw std::invalid_argument("posterior_prob_region: observation does not match experiment dimension");
  }
  if (region.dim() != 0) require_dim(x, region.dim(), "posterior_prob_region");

  if (auto exact = posterior_prob_closed_form(region, x, exp)) return McSummary{*exact, 0.0, 0, 0};

  if (const auto* c = std::get_if<Complement>(&region.variant())) {
    McSummary s = posterior_prob_region(*c->inner, x, exp, draws, rng);
    s.estimate = 1.0 - s.estimate;
    return s;
  }

  if (draws == 0) throw std::invalid_argument("posterior_prob_region: draws must be positive");
  const Eigen::Index d = exp.dim();
  const Eigen::Map<const Eigen::VectorXd> mean(x.data(), d);
  const Eigen::MatrixXd& factor = exp.cov.factor();
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(d);
  Eigen::VectorXd theta(d);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    for (auto& v : z) v = normal(rng);
    theta.noalias() = mean + factor * z;
    if (region.contains(std::span<const double>(theta.data(), static_cast<std::size_t>(d)))) ++hits;
  }
  return summarize(hits, draws, 0);
}

double kline_orthant_posterior(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("kline_orthant_posterior: empty observation");
  double prod = 1.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("kline_orthant_posterior: non-finite coordinate");
    prod *= std_normal_cdf(v);
  }
  return 1.0 - prod;
}

Decision bayes_test(const NullRegion& region, std::span<const double> x, const Experiment& exp, double alpha,
                    std::uint64_t draws, Rng& rng) {
  require_alpha(alpha);
  const McSummary post = posterior_prob_region(region, x, exp, draws, rng);
  return post.estimate <= alpha ? Decision::Reject : Decision::Accept;
}

double halfspace_rejection_probability(const HalfSpace& region, std::span<const double> theta,
                                       const Experiment& exp, double alpha) {
  require_alpha(alpha);
  require_dim(theta, region.direction.size(), "halfspace_rejection_probability");
  const double var = exp.cov.quadratic_form(region.direction);
  if (!(var > 0.0)) throw NumericalError("halfspace_rejection_probability: degenerate direction");
  double ct = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) ct += region.direction[j] * theta[j];
  // Reject iff c'X >= c0 + sd z_{1-alpha}, and c'X ~ N(c'theta, sd^2).
  return exp.family.cdf((ct - region.offset) / std::sqrt(var) + exp.family.quantile(alpha));
}

McSummary rejection_probability(const NullRegion& region, std::span<const double> theta, const Experiment& exp,
                                double alpha, const RpOptions& options) {
  require_alpha(alpha);
  if (options.reps == 0) throw std::invalid_argument("rejection_probability: reps must be positive");
  if (static_cast<Eigen::Index>(theta.size()) != exp.dim()) {
    throw std::invalid_argument("rejection_probability: theta does not match experiment dimension");
  }
  const Eigen::Map<const Eigen::VectorXd> mean(theta.data(), exp.dim());
  const Eigen::VectorXd center = mean;
  const SeedPlan plan(options.master_seed);

  auto hits = map_replications<std::uint8_t>(options.reps, plan, options.workers, [&](std::uint64_t, Rng& rng) {
    const Eigen::VectorXd x = mvn_sample(center, exp.cov, rng);
    const auto xs = std::span<const double>(x.data(), static_cast<std::size_t>(x.size()));
    return static_cast<std::uint8_t>(bayes_test(region, xs, exp, alpha, options.draws, rng) == Decision::Reject);
  });
  std::uint64_t rejects = 0;
  for (auto h : hits) rejects += h;
  return summarize(rejects, options.reps, options.master_seed);
}

bool in_closure(const NullRegion& region, std::span<const double> theta) {
  if (region.contains(theta)) return true;
  std::vector<double> probe(theta.begin(), theta.end());
  double scale = 1.0;
  for (double v : theta) scale = std::max(scale, std::abs(v));
  const double eps = 1e-9 * scale;
  for (std::size_t j = 0; j < probe.size(); ++j) {
    for (double s : {eps, -eps}) {
      probe[j] = theta[j] + s;
      if (region.contains(probe)) return true;
      probe[j] = theta[j];
    }
  }
  for (double s : {eps, -eps}) {
    for (std::size_t j = 0; j < probe.size(); ++j) probe[j] = theta[j] + s;
    if (region.contains(probe)) return true;
  }
  return false;
}

SizeEstimate size_over_boundary(const NullRegion& region, const std::vector<std::vector<double>>& grid,
                                const Experiment& exp, double alpha, const RpOptions& options) {
  if (grid.empty()) throw std::invalid_argument("size_over_boundary: empty grid");
  SizeEstimate out;
  const SeedPlan plan(options.master_seed);
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& theta = grid[k];
    const bool member = region.contains(theta);
    if (!member && !in_closure(region, theta)) {
      throw std::invalid_argument("size_over_boundary: grid point " + std::to_string(k) +
                                  " is outside the closure of the null region");
    }
    RpOptions point_options = options;
    point_options.master_seed = plan.child(static_cast<std::uint64_t>(k)).master_seed();
    out.per_point.push_back(rejection_probability(region, theta, exp, alpha, point_options));
    out.closure_only.push_back(!member);
    if (out.per_point[k].estimate > out.per_point[best].estimate) best = k;
  }
  out.size = out.per_point[best];
  out.size.master_seed = options.master_seed;
  out.argmax = grid[best];
  return out;
}

LevelInterval minimax_level_bounds(double alpha) {
  require_alpha(alpha);
  return LevelInterval{alpha, alpha / (1.0 - alpha)};
}

}  // namespace ineq

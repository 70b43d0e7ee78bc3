#pragma once

// Gaussian limit experiments: X - theta | theta and theta - X | X share the
// law N(0, Sigma). Null regions, posterior probabilities, the Bayesian test
// (reject iff Pr(H0 | X) <= alpha) and its frequentist rejection probability.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ineq/distributions.hpp"
#include "ineq/mc_harness.hpp"

namespace ineq {

class NullRegion;

/// {theta : c'theta <= c0}
struct HalfSpace {
  std::vector<double> direction;
  double offset = 0.0;
};

/// Scalar {theta <= c0}.
struct LowerHalfLine {
  double bound = 0.0;
};

/// Coordinatewise lower <= theta <= upper; bounds may be infinite.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Scalar union of sorted, disjoint closed intervals. Degenerate [a, a] allowed.
struct IntervalUnion {
  std::vector<Interval> intervals;
};

/// {theta in R^2 : theta_1 * theta_2 >= 0}
struct SignAgreement {};

struct Complement {
  std::shared_ptr<const NullRegion> inner;
};

/// Opaque membership test; posterior probabilities always go through Monte Carlo.
struct Predicate {
  std::function<bool(std::span<const double>)> test;
  std::size_t dim = 0;
  std::string description;
};

class NullRegion {
 public:
  using Variant =
      std::variant<HalfSpace, LowerHalfLine, Box, IntervalUnion, SignAgreement, Complement, Predicate>;

  static NullRegion half_space(std::vector<double> direction, double offset);
  static NullRegion lower_half_line(double bound);
  static NullRegion box(std::vector<double> lower, std::vector<double> upper);
  /// theta >= 0 elementwise.
  static NullRegion orthant(std::size_t dim);
  static NullRegion interval_union(std::vector<Interval> intervals);
  static NullRegion sign_agreement();
  static NullRegion complement(NullRegion inner);
  static NullRegion predicate(std::function<bool(std::span<const double>)> test, std::size_t dim,
                              std::string description = "predicate");

  const Variant& variant() const { return v_; }

  /// Dimension the region lives in, or 0 when it accepts any dimension.
  std::size_t dim() const;
  bool contains(std::span<const double> theta) const;
  std::string describe() const;

 private:
  explicit NullRegion(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct Experiment {
  SymmetricLocationFamily family = SymmetricLocationFamily::standard_normal();
  CovarianceMatrix cov = CovarianceMatrix::identity(1);

  static Experiment standard(Eigen::Index dim) {
    return Experiment{SymmetricLocationFamily::standard_normal(), CovarianceMatrix::identity(dim)};
  }
  Eigen::Index dim() const { return cov.dim(); }
};

enum class Decision { Reject, Accept };

/// F((c0 - c'x) / sqrt(c' Sigma c)). Throws NumericalError when c' Sigma c == 0.
double posterior_prob_halfspace(const HalfSpace& region, std::span<const double> x, const Experiment& exp);

/// Exact posterior probability when one is available (half-space, half-line,
/// interval union, box or sign agreement with independent coordinates, and
/// complements of those); std::nullopt otherwise.
std::optional<double> posterior_prob_closed_form(const NullRegion& region, std::span<const double> x,
                                                 const Experiment& exp);

/// Pr(theta in region | X = x). Closed-form branches report mc_se = 0 and reps = 0.
/// Complements reuse the inner region's posterior draws, so the two estimates sum to one.
McSummary posterior_prob_region(const NullRegion& region, std::span<const double> x, const Experiment& exp,
                                std::uint64_t draws, Rng& rng);

/// Pr(theta not >= 0 | X = x) with Sigma = I: 1 - prod_j F(x_j).
double kline_orthant_posterior(std::span<const double> x);

Decision bayes_test(const NullRegion& region, std::span<const double> x, const Experiment& exp, double alpha,
                    std::uint64_t draws, Rng& rng);

/// Exact rejection probability of the Bayesian test of a half-space at theta:
/// 1 - F((c0 - c'theta) / sd + z_{1-alpha}).
double halfspace_rejection_probability(const HalfSpace& region, std::span<const double> theta,
                                       const Experiment& exp, double alpha);

struct RpOptions {
  std::uint64_t reps = 10000;
  std::uint64_t draws = 1000;  // posterior draws, only used by Monte Carlo branches
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
};

/// Frequentist rejection probability of the Bayesian test at theta: X ~ N(theta, Sigma).
McSummary rejection_probability(const NullRegion& region, std::span<const double> theta, const Experiment& exp,
                                double alpha, const RpOptions& options);

/// Membership in the region or, up to a 1e-9 coordinate nudge, its closure.
bool in_closure(const NullRegion& region, std::span<const double> theta);

struct SizeEstimate {
  McSummary size;                  // max over grid points
  std::vector<double> argmax;
  std::vector<McSummary> per_point;
  std::vector<bool> closure_only;  // point lies in the closure but not in the region
};

/// Size approximated as the maximum RP over a user grid of null points. Every
/// point must lie in the region or its closure; throws std::invalid_argument otherwise
/// and for an empty grid.
SizeEstimate size_over_boundary(const NullRegion& region, const std::vector<std::vector<double>>& grid,
                                const Experiment& exp, double alpha, const RpOptions& options);

struct LevelInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// The open interval (alpha, alpha / (1 - alpha)) containing the minimax posterior threshold.
LevelInterval minimax_level_bounds(double alpha);

}  // namespace ineq

#pragma once

// First-order stochastic dominance (SD1): F_X(t) <= F_Y(t) for all t.
// Bayesian bootstrap posteriors and frequentist p-values for SD1 and non-SD1 nulls.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ineq/distributions.hpp"
#include "ineq/mc_harness.hpp"

namespace ineq {

/// A CDF given by knots and values. Step: right-continuous jumps at strictly
/// increasing support points, `values` holding cumulative weights. PiecewiseLinear:
/// linear interpolation between non-decreasing knots; a repeated knot encodes a
/// jump, the later copy holding the right value. Zero left of the first knot.
class EcdfLike {
 public:
  enum class Kind { Step, PiecewiseLinear };

  static EcdfLike step(std::vector<double> support, std::vector<double> cumulative);
  static EcdfLike piecewise_linear(std::vector<double> knots, std::vector<double> values);

  Kind kind() const { return kind_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double t) const;
  double left_limit(double t) const;

 private:
  EcdfLike(Kind kind, std::vector<double> knots, std::vector<double> values);
  Kind kind_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Empirical CDF with jump 1/n at each observation (ties merged).
EcdfLike ecdf(std::span<const double> sample);

/// X_i = i/(n+1) + h/sqrt(n) for i = 1..n and Y_i = i/n for i = 1..n-1.
std::pair<std::vector<double>, std::vector<double>> fixed_design_sample(int n, double h);

enum class BootstrapVariant { Rubin, Banks };

/// Banks knots: order statistics padded by one average spacing on each side.
/// Needs at least two observations.
std::vector<double> banks_knots(std::span<const double> sample);

/// One posterior draw. Rubin puts Dirichlet(1,...,1) weights on the observations.
/// Banks spreads Dirichlet weights over the n+1 gaps between banks_knots linearly;
/// with a single observation it falls back to the point mass.
EcdfLike bb_draw(std::span<const double> sample, BootstrapVariant variant, Rng& rng);

/// A known continuous CDF F0 with the points where it bends.
struct ReferenceCdf {
  std::function<double(double)> cdf;
  std::vector<double> breakpoints;
  std::string name = "reference";

  static ReferenceCdf uniform(double lo = 0.0, double hi = 1.0);
};

struct SampleOpponent {
  std::vector<double> values;
};

using Opponent = std::variant<ReferenceCdf, SampleOpponent>;

struct SdConfig {
  std::uint64_t draws = 2000;
  BootstrapVariant bootstrap = BootstrapVariant::Banks;
  int refine = 0;    // extra evaluation points inserted between consecutive grid points
  double tol = 0.0;  // dominance slack: F_X <= opponent + tol
};

/// Share of posterior draws with F_X <= opponent on the evaluation grid. In the
/// two-sample case both posteriors are drawn independently, X first.
McSummary posterior_prob_sd1(std::span<const double> x, const Opponent& opponent, const SdConfig& cfg, Rng& rng);

/// 1 - posterior_prob_sd1 computed from the same draws.
McSummary posterior_prob_nonsd1(std::span<const double> x, const Opponent& opponent, const SdConfig& cfg,
                                Rng& rng);

/// One-sided KS p-value for H0: SD1, asymptotic exponential form.
double ks_pvalue_sd1(std::span<const double> x, const Opponent& opponent);

/// One-sample intersection-union p-value for H0: non-SD1 from order-statistic
/// Beta laws: max_k Pr(Beta(k, n+1-k) >= F0(X_(k))).
double iu_beta_pvalue_nonsd1(std::span<const double> x, const ReferenceCdf& f0);

struct GridPValue {
  double value = 1.0;
  bool degenerate = false;  // no pooled point had both ECDFs inside (0, 1)
};

struct MinT {
  double t = 0.0;
  double at = 0.0;
  bool valid = false;
};

/// min over pooled points of (F_Y - F_X) / sqrt(F_X(1-F_X)/n + F_Y(1-F_Y)/m),
/// skipping points where either ECDF is 0 or 1.
MinT min_t_statistic(std::span<const double> x, std::span<const double> y);

/// Intersection-union max-t p-value: max over the grid of 1 - Phi(t) = 1 - Phi(min t).
GridPValue iu_maxt_pvalue_nonsd1(std::span<const double> x, std::span<const double> y);

/// Min-t test of non-dominance with a bootstrap p-value under the least
/// favourable null: both samples are reweighted so that their CDFs touch at the
/// minimizing point, resampled `reps` times, and p = (1 + #{t* >= t}) / (reps + 1).
/// A nonpositive observed min-t gives p = 1.
GridPValue dd_pvalue_nonsd1(std::span<const double> x, std::span<const double> y, std::uint64_t reps, Rng& rng);

enum class SdNull { SD1, NonSD1 };
enum class SdMethod { Frequentist, Bayesian, IuMaxT };

struct SdDgp {
  double h = 0.0;
  int n = 100;
  bool two_sample = false;
};

/// X_i ~ Unif(h/sqrt(n), 1 + h/sqrt(n)), and in the two-sample case Y_i ~ Unif(0, 1), both of size n.
std::pair<std::vector<double>, std::vector<double>> draw_sd_dgp(const SdDgp& dgp, Rng& rng);

struct SdRpOptions {
  std::uint64_t reps = 1000;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
  std::uint64_t dd_bootstrap = 199;
};

/// Fraction of replications where the method rejects at level alpha. Frequentist
/// means KS under SD1, IU-beta (one-sample) or the bootstrap min-t (two-sample)
/// under non-SD1. Bayesian rejects SD1 when its posterior is <= alpha and
/// non-SD1 when 1 - posterior <= alpha. Replication i draws its data first, so
/// methods run with the same seed see the same samples.
McSummary sd_rejection_probability(const SdDgp& dgp, SdNull null, SdMethod method, double alpha,
                                   const SdConfig& cfg, const SdRpOptions& options);

/// Both Bayesian rejection rates (SD1, non-SD1) from the same replications.
std::pair<McSummary, McSummary> sd_bayes_rejection_pair(const SdDgp& dgp, double alpha, const SdConfig& cfg,
                                                        const SdRpOptions& options);

}  // namespace ineq

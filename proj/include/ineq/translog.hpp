#pragma once

// Translog cost function with three input prices, its price Hessian, the
// principal-minor NSD check and the Bayesian bootstrap curvature test.

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ineq/distributions.hpp"
#include "ineq/mc_harness.hpp"

namespace ineq {

/// Coefficients of the price-normalized model, in design-column order.
struct FreeParams {
  double a0 = 0.0, ay = 0.0, ayy = 0.0, ay1 = 0.0, ay2 = 0.0;
  double b1 = 0.0, b2 = 0.0, b11 = 0.0, b12 = 0.0, b22 = 0.0;

  static constexpr int size = 10;
  Eigen::Matrix<double, 10, 1> to_vector() const;
  static FreeParams from_vector(const Eigen::Ref<const Eigen::VectorXd>& v);
};

struct TranslogParams {
  double a0 = 0.0;
  double ay = 0.0;
  double ayy = 0.0;
  Eigen::Vector3d ayk = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
};

/// Symmetry and homogeneity fill in the rest: b3 = 1 - b1 - b2, ay3 = -ay1 - ay2,
/// b13 = -b11 - b12, b23 = -b12 - b22, b33 = b11 + 2 b12 + b22.
TranslogParams expand_params(const FreeParams& free);

double log_cost(const TranslogParams& p, double y, const Eigen::Vector3d& w);

/// Cost shares r_k = d ln C / d ln w_k.
Eigen::Vector3d shares(const TranslogParams& p, double y, const Eigen::Vector3d& w);

struct Hessian3 {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  double cost_scale = 1.0;
};

/// H_mk = C (b_mk + r_m r_k - 1{k=m} r_k) / (w_m w_k).
Hessian3 hessian(const TranslogParams& p, double y, const Eigen::Vector3d& w);

/// Every principal minor of order p, times (-1)^p, is >= -tol.
bool is_nsd(const Eigen::Matrix3d& h, double tol = 1e-7);
inline bool is_nsd(const Hessian3& h, double tol = 1e-7) { return is_nsd(h.h, tol); }

/// True coefficients used in the simulations: b1 = b2 = 1/3, b11 = b22 = 2/9 - delta,
/// b12 = -1/9, a0 = ay = 1, remaining terms zero.
FreeParams default_truth(double delta = 0.001);

struct TranslogDgp {
  FreeParams free = default_truth(0.001);
  double delta = 0.001;
  double sigma_x = 0.1;  // sd of ln y and each ln w_k
  double sigma_eps = 0.0;
  int n = 100;

  static TranslogDgp with(double delta, double sigma_eps, double sigma_x = 0.1, int n = 100);
};

struct TranslogDataset {
  Eigen::VectorXd ln_y, ln_w1, ln_w2, ln_w3;
  Eigen::VectorXd response;  // ln(C / w3)

  Eigen::Index size() const { return ln_y.size(); }
  /// n x 10 regressors of the normalized model.
  Eigen::MatrixXd design() const;
};

TranslogDataset simulate_dataset(const TranslogDgp& dgp, Rng& rng);

class RankDeficientDesign : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

FreeParams ols_fit(const TranslogDataset& data);

/// Weighted least squares; weights must be nonnegative with a positive sum and
/// only their ratios matter. Throws RankDeficientDesign.
FreeParams weighted_fit(const TranslogDataset& data, std::span<const double> weights);

/// Redraws allowed per posterior draw or dataset before giving up.
inline constexpr int kMaxRedraws = 10;

/// Share of Dirichlet-weighted fits whose Hessian at y = w = 1 is NSD. Rank
/// deficient weightings are redrawn and counted in *redraws.
McSummary posterior_prob_nsd(const TranslogDataset& data, std::uint64_t draws, Rng& rng,
                             std::uint64_t* redraws = nullptr);

/// OLS estimates satisfy b1, b2, b3 >= 0.
bool locally_monotone(const FreeParams& fit);

struct TranslogSimResult {
  std::vector<double> alphas;
  std::vector<McSummary> rates;  // one per alpha, same replications
  McSummary monotonicity;
  std::uint64_t redraws = 0;
};

struct TranslogSimOptions {
  std::uint64_t reps = 500;
  std::uint64_t draws = 200;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
};

/// Rejection rate of H0: NSD at the unit point when the posterior is <= alpha.
TranslogSimResult type1_error_sim(const TranslogDgp& dgp, const std::vector<double>& alphas,
                                  const TranslogSimOptions& options);

}  // namespace ineq

#pragma once

// Scalar and multivariate probability primitives shared by the experiments.

#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ineq {

/// Random stream used everywhere. Streams are created by SeedPlan (mc_harness.hpp).
using Rng = std::mt19937_64;

/// Raised when a numerical precondition fails (non-PSD covariance, singular design, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double std_normal_pdf(double x);

/// Phi(x). Saturates to exactly 0 / 1 for |x| > 40.
double std_normal_cdf(double x);

/// Inverse of Phi. Throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

/// Continuous CDF with full support and F(-x) = 1 - F(x).
/// Only the standard normal ships; the tag keeps room for other members.
class SymmetricLocationFamily {
 public:
  enum class Kind { StandardNormal };

  static SymmetricLocationFamily standard_normal() { return SymmetricLocationFamily(Kind::StandardNormal); }

  Kind kind() const { return kind_; }
  std::string_view name() const;

  double cdf(double x) const;
  double pdf(double x) const;
  double quantile(double p) const;

 private:
  explicit SymmetricLocationFamily(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// Symmetric positive semidefinite matrix together with a factor L with L L' = Sigma.
///
/// The factor comes from a pivoted LDL' decomposition so singular matrices
/// (e.g. perfectly negatively correlated pairs) are accepted; coordinates that
/// are exact linear combinations of each other stay exact in samples.
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument for non-square or asymmetric input and
  /// NumericalError when the matrix is not PSD.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  static CovarianceMatrix identity(Eigen::Index dim);
  /// Unit variances with the given correlation.
  static CovarianceMatrix bivariate(double corr);
  static CovarianceMatrix scalar(double variance);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Eigen::MatrixXd& factor() const { return factor_; }
  bool is_diagonal() const { return diagonal_; }

  /// c' Sigma c
  double quadratic_form(std::span<const double> c) const;

 private:
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd factor_;
  bool diagonal_ = false;
};

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const CovarianceMatrix& cov, Rng& rng);

/// Regularized incomplete beta I_x(a, b). Throws std::domain_error outside
/// x in [0, 1], a > 0, b > 0.
double beta_cdf(double x, double a, double b);

/// Flat Dirichlet(1, ..., 1) weights as normalized standard exponentials.
std::vector<double> dirichlet_flat_sample(std::size_t n, Rng& rng);

/// In-place variant for hot loops; `out` must be non-empty.
void dirichlet_flat_fill(std::span<double> out, Rng& rng);

}  // namespace ineq

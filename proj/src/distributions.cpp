#include "ineq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <math.h>
#include <limits>
#include <numbers>
#include <string>

namespace ineq {

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double x) {
  if (x > 40.0) return 1.0;
  if (x < -40.0) return 0.0;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation for the lower half, |rel err| < 1.2e-9.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (p > 0.5) return -std_normal_quantile(1.0 - p);  // 1 - p is exact here
  if (p == 0.5) return 0.0;

  double x = acklam_lower(p);
  // Halley refinement against the erfc-based CDF.
  for (int i = 0; i < 2; ++i) {
    const double e = std_normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

std::string_view SymmetricLocationFamily::name() const {
  switch (kind_) {
    case Kind::StandardNormal: return "standard_normal";
  }
  return "unknown";
}

double SymmetricLocationFamily::cdf(double x) const { return std_normal_cdf(x); }
double SymmetricLocationFamily::pdf(double x) const { return std_normal_pdf(x); }
double SymmetricLocationFamily::quantile(double p) const { return std_normal_quantile(p); }

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("covariance matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) throw std::invalid_argument("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("covariance matrix is not symmetric");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose());

  const Eigen::Index d = entries_.rows();
  diagonal_ = (entries_ - Eigen::MatrixXd(entries_.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;

  if (diagonal_) {
    if (entries_.diagonal().minCoeff() < 0.0) throw NumericalError("covariance matrix has a negative variance");
    factor_ = Eigen::MatrixXd::Zero(d, d);
    factor_.diagonal() = entries_.diagonal().cwiseSqrt();
    return;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(entries_);
  Eigen::VectorXd diag = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success || diag.minCoeff() < -1e-10 * scale) {
    throw NumericalError("covariance matrix is not positive semidefinite");
  }
  diag = diag.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd lower = ldlt.matrixL();
  factor_ = ldlt.transpositionsP().transpose() * (lower * diag.asDiagonal());
  if ((factor_ * factor_.transpose() - entries_).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw NumericalError("covariance matrix is not positive semidefinite");
  }
}

CovarianceMatrix CovarianceMatrix::identity(Eigen::Index dim) {
  return CovarianceMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

CovarianceMatrix CovarianceMatrix::bivariate(double corr) {
  if (!(corr >= -1.0 && corr <= 1.0)) throw std::invalid_argument("correlation must lie in [-1, 1]");
  Eigen::MatrixXd m(2, 2);
  m << 1.0, corr, corr, 1.0;
  return CovarianceMatrix(m);
}

CovarianceMatrix CovarianceMatrix::scalar(double variance) {
  return CovarianceMatrix(Eigen::MatrixXd::Constant(1, 1, variance));
}

double CovarianceMatrix::quadratic_form(std::span<const double> c) const {
  if (static_cast<Eigen::Index>(c.size()) != dim()) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> v(c.data(), dim());
  return v.dot(entries_ * v);
}

Eigen::VectorXd mvn_sample(const Eigen::VectorXd& mean, const CovarianceMatrix& cov, Rng& rng) {
  if (mean.size() != cov.dim()) throw std::invalid_argument("mvn_sample: dimension mismatch");
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(mean.size());
  for (auto& v : z) v = normal(rng);
  return mean + cov.factor() * z;
}

namespace {

// std::lgamma may write the global signgam; replications call this from worker threads.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double x, double a, double b) {
  constexpr int max_iter = 100000;
  constexpr double eps = 4e-16;
  constexpr double tiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return h;
  }
  throw NumericalError("beta_cdf: continued fraction did not converge");
}

}  // namespace

double beta_cdf(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("beta_cdf: shape parameters must be positive and finite");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("beta_cdf: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * beta_continued_fraction(x, a, b) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b, 0.0, 1.0);
}

void dirichlet_flat_fill(std::span<double> out, Rng& rng) {
  if (out.empty()) throw std::invalid_argument("dirichlet_flat_fill: need at least one weight");
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (auto& w : out) {
    w = expo(rng);
    total += w;
  }
  for (auto& w : out) w /= total;
}

std::vector<double> dirichlet_flat_sample(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("dirichlet_flat_sample: n must be positive");
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  dirichlet_flat_fill(w, rng);
  return w;
}

}  // namespace ineq

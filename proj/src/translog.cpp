#include "ineq/translog.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ineq {

Eigen::Matrix<double, 10, 1> FreeParams::to_vector() const {
  Eigen::Matrix<double, 10, 1> v;
  v << a0, ay, ayy, ay1, ay2, b1, b2, b11, b12, b22;
  return v;
}

FreeParams FreeParams::from_vector(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() != size) throw std::invalid_argument("FreeParams::from_vector: expected 10 coefficients");
  return FreeParams{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

TranslogParams expand_params(const FreeParams& f) {
  const auto v = f.to_vector();
  if (!v.allFinite()) throw std::invalid_argument("expand_params: coefficients must be finite");
  TranslogParams p;
  p.a0 = f.a0;
  p.ay = f.ay;
  p.ayy = f.ayy;
  p.ayk << f.ay1, f.ay2, -f.ay1 - f.ay2;
  p.b << f.b1, f.b2, 1.0 - f.b1 - f.b2;
  const double b13 = -f.b11 - f.b12;
  const double b23 = -f.b12 - f.b22;
  const double b33 = f.b11 + 2.0 * f.b12 + f.b22;
  p.B << f.b11, f.b12, b13,
         f.b12, f.b22, b23,
         b13, b23, b33;
  return p;
}

namespace {

Eigen::Vector3d checked_logs(double y, const Eigen::Vector3d& w, const char* what) {
  if (!(y > 0.0) || !(w.minCoeff() > 0.0) || !std::isfinite(y) || !w.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": output and prices must be positive and finite");
  }
  return w.array().log();
}

}  // namespace

double log_cost(const TranslogParams& p, double y, const Eigen::Vector3d& w) {
  const Eigen::Vector3d lw = checked_logs(y, w, "log_cost");
  const double ly = std::log(y);
  return p.a0 + p.ay * ly + 0.5 * p.ayy * ly * ly + ly * p.ayk.dot(lw) + p.b.dot(lw) + 0.5 * lw.dot(p.B * lw);
}

Eigen::Vector3d shares(const TranslogParams& p, double y, const Eigen::Vector3d& w) {
  const Eigen::Vector3d lw = checked_logs(y, w, "shares");
  return p.ayk * std::log(y) + p.b + p.B.transpose() * lw;
}

Hessian3 hessian(const TranslogParams& p, double y, const Eigen::Vector3d& w) {
  const Eigen::Vector3d r = shares(p, y, w);
  const double c = std::exp(log_cost(p, y, w));
  Hessian3 out;
  out.cost_scale = c;
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < 3; ++k) {
      const double inner = p.B(m, k) + r[m] * r[k] - (k == m ? r[k] : 0.0);
      out.h(m, k) = c * inner / (w[m] * w[k]);
    }
  }
  return out;
}

bool is_nsd(const Eigen::Matrix3d& h, double tol) {
  for (unsigned mask = 1; mask < 8; ++mask) {
    int idx[3];
    int order = 0;
    for (int j = 0; j < 3; ++j) {
      if (mask & (1u << j)) idx[order++] = j;
    }
    double det = 0.0;
    if (order == 1) {
      det = h(idx[0], idx[0]);
    } else if (order == 2) {
      det = h(idx[0], idx[0]) * h(idx[1], idx[1]) - h(idx[0], idx[1]) * h(idx[1], idx[0]);
    } else {
      det = h.determinant();
    }
    const double signed_minor = (order % 2 == 0) ? det : -det;
    if (signed_minor < -tol) return false;
  }
  return true;
}

FreeParams default_truth(double delta) {
  FreeParams f;
  f.a0 = 1.0;
  f.ay = 1.0;
  f.b1 = 1.0 / 3.0;
  f.b2 = 1.0 / 3.0;
  f.b11 = 2.0 / 9.0 - delta;
  f.b22 = 2.0 / 9.0 - delta;
  f.b12 = -1.0 / 9.0;
  return f;
}

TranslogDgp TranslogDgp::with(double delta, double sigma_eps, double sigma_x, int n) {
  TranslogDgp d;
  d.free = default_truth(delta);
  d.delta = delta;
  d.sigma_eps = sigma_eps;
  d.sigma_x = sigma_x;
  d.n = n;
  return d;
}

Eigen::MatrixXd TranslogDataset::design() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd x(n, FreeParams::size);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ly = ln_y[i];
    const double l1 = ln_w1[i] - ln_w3[i];
    const double l2 = ln_w2[i] - ln_w3[i];
    x.row(i) << 1.0, ly, 0.5 * ly * ly, ly * l1, ly * l2, l1, l2, 0.5 * l1 * l1, l1 * l2, 0.5 * l2 * l2;
  }
  return x;
}

TranslogDataset simulate_dataset(const TranslogDgp& dgp, Rng& rng) {
  if (dgp.n < 1) throw std::invalid_argument("simulate_dataset: n must be positive");
  if (!(dgp.sigma_x >= 0.0) || !(dgp.sigma_eps >= 0.0)) {
    throw std::invalid_argument("simulate_dataset: standard deviations must be nonnegative");
  }
  std::normal_distribution<double> z;
  TranslogDataset d;
  d.ln_y.resize(dgp.n);
  d.ln_w1.resize(dgp.n);
  d.ln_w2.resize(dgp.n);
  d.ln_w3.resize(dgp.n);
  Eigen::VectorXd eps(dgp.n);
  for (int i = 0; i < dgp.n; ++i) {
    d.ln_y[i] = dgp.sigma_x * z(rng);
    d.ln_w1[i] = dgp.sigma_x * z(rng);
    d.ln_w2[i] = dgp.sigma_x * z(rng);
    d.ln_w3[i] = dgp.sigma_x * z(rng);
    eps[i] = dgp.sigma_eps * z(rng);
  }
  d.response = d.design() * dgp.free.to_vector() + eps;
  return d;
}

namespace {

FreeParams solve_wls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& sqrt_w) {
  const Eigen::MatrixXd xw = sqrt_w.asDiagonal() * x;
  const Eigen::VectorXd yw = sqrt_w.cwiseProduct(y);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xw);
  if (qr.rank() < FreeParams::size) {
    throw RankDeficientDesign("translog fit: design has rank " + std::to_string(qr.rank()) + " < 10");
  }
  return FreeParams::from_vector(qr.solve(yw));
}

}  // namespace

FreeParams ols_fit(const TranslogDataset& data) {
  return solve_wls(data.design(), data.response, Eigen::VectorXd::Ones(data.size()));
}

FreeParams weighted_fit(const TranslogDataset& data, std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != data.size()) {
    throw std::invalid_argument("weighted_fit: one weight per observation required");
  }
  double top = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weighted_fit: weights must be nonnegative");
    top = std::max(top, w);
  }
  if (!(top > 0.0)) throw std::invalid_argument("weighted_fit: weights must not all be zero");
  Eigen::VectorXd sqrt_w(data.size());
  for (Eigen::Index i = 0; i < data.size(); ++i) sqrt_w[i] = std::sqrt(weights[static_cast<std::size_t>(i)] / top);
  return solve_wls(data.design(), data.response, sqrt_w);
}

McSummary posterior_prob_nsd(const TranslogDataset& data, std::uint64_t draws, Rng& rng, std::uint64_t* redraws) {
  if (draws == 0) throw std::invalid_argument("posterior_prob_nsd: draws must be positive");
  const Eigen::MatrixXd x = data.design();
  const Eigen::Vector3d unit = Eigen::Vector3d::Ones();
  std::vector<double> w(static_cast<std::size_t>(data.size()));
  Eigen::VectorXd sqrt_w(data.size());
  std::uint64_t hits = 0;
  std::uint64_t retried = 0;
  for (std::uint64_t d = 0; d < draws; ++d) {
    for (int attempt = 0;; ++attempt) {
      dirichlet_flat_fill(w, rng);
      const double top = *std::max_element(w.begin(), w.end());
      for (Eigen::Index i = 0; i < data.size(); ++i) sqrt_w[i] = std::sqrt(w[static_cast<std::size_t>(i)] / top);
      try {
        const FreeParams fit = solve_wls(x, data.response, sqrt_w);
        if (is_nsd(hessian(expand_params(fit), 1.0, unit))) ++hits;
        break;
      } catch (const RankDeficientDesign&) {
        if (attempt >= kMaxRedraws) throw;
        ++retried;
      }
    }
  }
  if (redraws) *redraws += retried;
  return summarize(hits, draws, 0);
}

bool locally_monotone(const FreeParams& fit) {
  const auto p = expand_params(fit);
  return p.b.minCoeff() >= 0.0;
}

TranslogSimResult type1_error_sim(const TranslogDgp& dgp, const std::vector<double>& alphas,
                                  const TranslogSimOptions& options) {
  if (alphas.empty()) throw std::invalid_argument("type1_error_sim: need at least one alpha");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("type1_error_sim: alpha must lie in (0, 1)");
  }
  if (options.reps == 0) throw std::invalid_argument("type1_error_sim: reps must be positive");

  struct Rep {
    double posterior = 0.0;
    bool monotone = false;
    std::uint64_t redraws = 0;
  };
  const SeedPlan plan(options.master_seed);
  const auto reps = map_replications<Rep>(options.reps, plan, options.workers, [&](std::uint64_t, Rng& rng) {
    Rep out;
    for (int attempt = 0;; ++attempt) {
      const TranslogDataset data = simulate_dataset(dgp, rng);
      try {
        out.monotone = locally_monotone(ols_fit(data));
        out.posterior = posterior_prob_nsd(data, options.draws, rng, &out.redraws).estimate;
        return out;
      } catch (const RankDeficientDesign&) {
        if (attempt >= kMaxRedraws) throw;
        ++out.redraws;
      }
    }
  });

  TranslogSimResult result;
  result.alphas = alphas;
  std::uint64_t mono = 0;
  for (const auto& r : reps) {
    mono += r.monotone ? 1 : 0;
    result.redraws += r.redraws;
  }
  for (double a : alphas) {
    std::uint64_t rejects = 0;
    for (const auto& r : reps) rejects += r.posterior <= a ? 1 : 0;
    result.rates.push_back(summarize(rejects, options.reps, options.master_seed));
  }
  result.monotonicity = summarize(mono, options.reps, options.master_seed);
  return result;
}

}  // namespace ineq

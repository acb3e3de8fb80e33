#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double asym_kernel(double e, double sp, double sm) {
  const double s = e >= 0.0 ? sp : sm;
  return std::exp(-e * e / (2.0 * s * s));
}

inline double regularized_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& d, double sp,
                                    double sm, double lambda, double w0, double w1) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    sum += asym_kernel(d[i] - w0 * x(i, 0) - w1 * x(i, 1), sp, sm);
  }
  return sum / static_cast<double>(x.rows()) - lambda * (w0 * w0 + w1 * w1);
}

/// Maximizes the 2-D objective by exhaustive lattice search: a coarse lattice
/// over [-range, range]^2, then a 1e-3 lattice around the best coarse cells.
inline Eigen::Vector2d grid_argmax(const Eigen::MatrixXd& x, const Eigen::VectorXd& d, double sp,
                                   double sm, double lambda, double range = 3.0) {
  const double coarse = 0.02;
  const int n = static_cast<int>(std::lround(2.0 * range / coarse));
  struct Cell {
    double value, w0, w1;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double w0 = -range + i * coarse;
      const double w1 = -range + j * coarse;
      cells.push_back({regularized_objective(x, d, sp, sm, lambda, w0, w1), w0, w1});
    }
  }
  std::partial_sort(cells.begin(), cells.begin() + 5, cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value > b.value; });

  const double fine = 1e-3;
  const int half = static_cast<int>(std::lround(2.0 * coarse / fine));
  Cell best{-1e300, 0.0, 0.0};
  for (int c = 0; c < 5; ++c) {
    for (int i = -half; i <= half; ++i) {
      for (int j = -half; j <= half; ++j) {
        const double w0 = cells[c].w0 + i * fine;
        const double w1 = cells[c].w1 + j * fine;
        const double v = regularized_objective(x, d, sp, sm, lambda, w0, w1);
        if (v > best.value) best = {v, w0, w1};
      }
    }
  }
  return {best.w0, best.w1};
}

/// Plain symmetric-kernel IRLS: W <- (X^T G X / N + lambda I)^-1 X^T G d / N.
inline Eigen::VectorXd mcc_fixed_point(const Eigen::MatrixXd& x, const Eigen::VectorXd& d,
                                       double sigma, double lambda, Eigen::VectorXd w,
                                       int iterations = 2000) {
  const double n = static_cast<double>(x.rows());
  for (int k = 0; k < iterations; ++k) {
    Eigen::VectorXd g(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double e = d[i] - x.row(i).dot(w);
      g[i] = std::exp(-e * e / (2.0 * sigma * sigma)) / (2.0 * sigma * sigma);
    }
    Eigen::MatrixXd a = x.transpose() * g.asDiagonal() * x / n;
    a.diagonal().array() += lambda;
    const Eigen::VectorXd next = a.ldlt().solve(x.transpose() * g.cwiseProduct(d) / n);
    if ((next - w).norm() < 1e-14) return next;
    w = next;
  }
  return w;
}

/// Asymptotic Kolmogorov-Smirnov critical value at significance 0.01.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

template <class Cdf>
double ks_statistic(std::vector<double> draws, Cdf cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return worst;
}

inline double normal_cdf(double v, double mean, double variance) {
  return 0.5 * std::erfc(-(v - mean) / std::sqrt(2.0 * variance));
}

/// Split normal: each half-Gaussian has mass 1/2.
inline double split_normal_cdf(double v, double var_neg, double var_pos) {
  return v < 0.0 ? normal_cdf(v, 0.0, var_neg) : normal_cdf(v, 0.0, var_pos);
}

struct MonteCarloEstimate {
  double mean;
  double standard_error;
};

template <class F>
MonteCarloEstimate mc_mean(const std::vector<double>& draws, F f) {
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : draws) {
    const double y = f(v);
    ++k;
    const double delta = y - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (y - mean);
  }
  const double var = m2 / static_cast<double>(k - 1);
  return {mean, std::sqrt(var / static_cast<double>(k))};
}

}  // namespace oracle

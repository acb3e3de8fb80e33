#pragma once

// Batch regression under the maximum asymmetric correntropy criterion.
//
// Maximizes  J(W) = (1/N) sum_i kernel(d_i - W^T x_i) - lambda ||W||^2.
// Stationarity of J rearranges to the fixed-point equation
//
//   W = (A(W) + lambda I)^{-1} B(W),
//   A = (1/N) sum xi(e_i) x_i x_i^T,   B = (1/N) sum xi(e_i) d_i x_i,
//
// an iteratively reweighted least-squares problem with weights xi(e_i).

#include <optional>

#include <Eigen/Dense>

#include "acorr/errors.hpp"
#include "acorr/kernel.hpp"

namespace acorr {

struct RegressionProblem {
  Eigen::MatrixXd inputs;   // N x m, row i is x_i
  Eigen::VectorXd targets;  // N
  KernelBandwidths bandwidths;
  double lambda = 0.0;

  Eigen::Index samples() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }

  /// Throws UsageError for N == 0, mismatched sizes, negative lambda or
  /// non-finite data.
  void validate() const;
};

struct FixedPointOptions {
  double tol = 1e-8;
  int max_iter = 500;
  /// Largest accepted condition number of A + lambda I (reciprocal estimate).
  double max_condition = 1e12;
  std::optional<Eigen::VectorXd> initial;
};

struct FixedPointResult {
  Eigen::VectorXd weights;
  int iterations_used = 0;
  double final_residual = 0.0;
  double objective_value = 0.0;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, Eigen::VectorXd last, double residual)
      : NumericalError(what), last_(std::move(last)), residual_(residual) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_; }
  double residual() const noexcept { return residual_; }

 private:
  Eigen::VectorXd last_;
  double residual_;
};

double objective(const RegressionProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& w);

/// dJ/dW = (1/N) sum psi(e_i) x_i - 2 lambda W.
Eigen::VectorXd objective_gradient(const RegressionProblem& problem,
                                   const Eigen::Ref<const Eigen::VectorXd>& w);

/// One application of W -> (A(W) + lambda I)^{-1} B(W).
Eigen::VectorXd fixed_point_map(const RegressionProblem& problem,
                                const Eigen::Ref<const Eigen::VectorXd>& w,
                                double max_condition = 1e12);

/// Iterates the fixed-point map from the least-squares solution (or
/// options.initial). Converged when ||T(W) - W|| / max(1, ||W||) <= tol.
/// If a full map step lowers J, the step is halved once.
FixedPointResult solve_fixed_point(const RegressionProblem& problem,
                                   const FixedPointOptions& options = {});

}  // namespace acorr

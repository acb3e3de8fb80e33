#include "acorr/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace acorr {

namespace {

void check_dim(const RegressionProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& w) {
  if (w.size() != problem.dim()) {
    throw UsageError("weight vector length " + std::to_string(w.size()) +
                     " does not match problem dimension " + std::to_string(problem.dim()));
  }
}

double relative_change(const Eigen::VectorXd& next, const Eigen::VectorXd& current) {
  return (next - current).norm() / std::max(1.0, current.norm());
}

Eigen::VectorXd initial_guess(const RegressionProblem& problem) {
  const Eigen::MatrixXd gram = problem.inputs.transpose() * problem.inputs;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.rcond() > 1e-10) {
    const Eigen::VectorXd w = ldlt.solve(problem.inputs.transpose() * problem.targets);
    if (w.allFinite()) return w;
  }
  return Eigen::VectorXd::Zero(problem.dim());
}

}  // namespace

void RegressionProblem::validate() const {
  if (inputs.rows() == 0 || inputs.cols() == 0) {
    throw UsageError("regression problem needs at least one sample and one dimension");
  }
  if (targets.size() != inputs.rows()) {
    throw UsageError("regression problem has " + std::to_string(inputs.rows()) + " inputs but " +
                     std::to_string(targets.size()) + " targets");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw UsageError("regularization lambda must be finite and non-negative");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw UsageError("regression data must be finite");
  }
}

double objective(const RegressionProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& w) {
  check_dim(problem, w);
  const Eigen::VectorXd errors = problem.targets - problem.inputs * w;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < errors.size(); ++i) sum += eval_kernel(errors[i], problem.bandwidths);
  return sum / static_cast<double>(problem.samples()) - problem.lambda * w.squaredNorm();
}

Eigen::VectorXd objective_gradient(const RegressionProblem& problem,
                                   const Eigen::Ref<const Eigen::VectorXd>& w) {
  check_dim(problem, w);
  const Eigen::VectorXd errors = problem.targets - problem.inputs * w;
  Eigen::VectorXd scores(errors.size());
  for (Eigen::Index i = 0; i < errors.size(); ++i) {
    scores[i] = eval_score(errors[i], problem.bandwidths);
  }
  return problem.inputs.transpose() * scores / static_cast<double>(problem.samples()) -
         2.0 * problem.lambda * w;
}

Eigen::VectorXd fixed_point_map(const RegressionProblem& problem,
                                const Eigen::Ref<const Eigen::VectorXd>& w, double max_condition) {
  check_dim(problem, w);
  const auto n = static_cast<double>(problem.samples());
  const Eigen::VectorXd errors = problem.targets - problem.inputs * w;
  Eigen::VectorXd xi(errors.size());
  for (Eigen::Index i = 0; i < errors.size(); ++i) {
    xi[i] = eval_weight_xi(errors[i], problem.bandwidths);
  }
  Eigen::MatrixXd a = problem.inputs.transpose() * xi.asDiagonal() * problem.inputs / n;
  a.diagonal().array() += problem.lambda;
  const Eigen::VectorXd b = problem.inputs.transpose() * xi.cwiseProduct(problem.targets) / n;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  const double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
  if (!(rcond > 0.0) || 1.0 / rcond > max_condition) {
    std::ostringstream msg;
    msg << "A + lambda*I is singular or ill-conditioned (condition estimate "
        << (rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity()) << " > "
        << max_condition << ")";
    throw NumericalError(msg.str());
  }
  return ldlt.solve(b);
}

FixedPointResult solve_fixed_point(const RegressionProblem& problem,
                                   const FixedPointOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0) || options.max_iter <= 0) {
    throw UsageError("fixed-point solver needs tol > 0 and max_iter > 0");
  }
  Eigen::VectorXd w;
  if (options.initial) {
    check_dim(problem, *options.initial);
    w = *options.initial;
  } else {
    w = initial_guess(problem);
  }

  double current = objective(problem, w);
  double residual = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= options.max_iter; ++k) {
    const Eigen::VectorXd mapped = fixed_point_map(problem, w, options.max_condition);
    residual = relative_change(mapped, w);
    if (residual <= options.tol) {
      return FixedPointResult{mapped, k, residual, objective(problem, mapped)};
    }
    Eigen::VectorXd next = mapped;
    double value = objective(problem, next);
    if (value < current) {
      next = w + 0.5 * (mapped - w);
      value = objective(problem, next);
    }
    w = std::move(next);
    current = value;
  }
  std::ostringstream msg;
  msg << "fixed-point iteration did not converge in " << options.max_iter
      << " iterations (residual " << residual << ")";
  throw NonConvergenceError(msg.str(), w, residual);
}

}  // namespace acorr

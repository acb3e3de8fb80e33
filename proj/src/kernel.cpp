#include "acorr/kernel.hpp"

#include <cmath>
#include <string>

#include "acorr/errors.hpp"

namespace acorr {

namespace {

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(what) + ": argument must be finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

KernelBandwidths::KernelBandwidths(double sigma_plus, double sigma_minus)
    : sigma_plus_(sigma_plus), sigma_minus_(sigma_minus) {
  if (!(std::isfinite(sigma_plus) && sigma_plus > 0.0) ||
      !(std::isfinite(sigma_minus) && sigma_minus > 0.0)) {
    throw UsageError("kernel bandwidths must be positive and finite (sigma_plus=" +
                     std::to_string(sigma_plus) +
                     ", sigma_minus=" + std::to_string(sigma_minus) + ")");
  }
}

double gaussian_kernel(double e, double sigma) {
  return std::exp(-(e * e) / (2.0 * sigma * sigma));
}

double gaussian_score(double e, double sigma) {
  return e / (sigma * sigma) * gaussian_kernel(e, sigma);
}

double eval_kernel(double e, const KernelBandwidths& bw) {
  require_finite(e, "eval_kernel");
  return gaussian_kernel(e, bw.for_error(e));
}

double eval_score(double e, const KernelBandwidths& bw) {
  require_finite(e, "eval_score");
  return gaussian_score(e, bw.for_error(e));
}

double eval_score_prime(double v, const KernelBandwidths& bw) {
  require_finite(v, "eval_score_prime");
  const double s2 = bw.for_error(v) * bw.for_error(v);
  return gaussian_kernel(v, bw.for_error(v)) / s2 * (1.0 - v * v / s2);
}

double eval_score_double_prime(double v, const KernelBandwidths& bw) {
  require_finite(v, "eval_score_double_prime");
  const double s2 = bw.for_error(v) * bw.for_error(v);
  return gaussian_kernel(v, bw.for_error(v)) / s2 * (v * v * v / (s2 * s2) - 3.0 * v / s2);
}

double eval_weight_xi(double e, const KernelBandwidths& bw) {
  require_finite(e, "eval_weight_xi");
  const double s = bw.for_error(e);
  return gaussian_kernel(e, s) / (2.0 * s * s);
}

double variable_step_size(double e, double mu, const KernelBandwidths& bw) {
  return 2.0 * mu * eval_weight_xi(e, bw);
}

}  // namespace acorr

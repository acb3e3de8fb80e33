#pragma once

// Steady-state excess mean-square error (EMSE) of correntropy filters.
//
// For a filter W <- W + mu psi(e) x in noise v with input covariance Rx,
// the second-order Taylor model of psi around v gives
//
//            mu Tr(Rx) E[psi^2(v)]
//   S ~ -----------------------------------------------------
//        2 E[psi'(v)] - mu Tr(Rx) E[psi(v) psi''(v) + psi'(v)^2]
//
// The expectations are evaluated by adaptive quadrature against the noise
// density, split at the psi branch point and the density's own kinks.

#include <functional>
#include <span>
#include <vector>

#include "acorr/errors.hpp"
#include "acorr/filters.hpp"
#include "acorr/kernel.hpp"
#include "acorr/noise.hpp"
#include "acorr/quadrature.hpp"

namespace acorr {

/// E[f(v)] under `model`. Integration is restricted to the model's truncated
/// support and partitioned at its breakpoints, at multiples of its component
/// scales and at `extra_points`.
double expect(const std::function<double(double)>& f, const NoiseModel& model,
              double abs_tol = 1e-10, std::span<const double> extra_points = {});

/// The three psi-expectations; they do not depend on the step size.
struct ScoreMoments {
  double e_psi_sq = 0.0;     // E[psi^2]
  double e_psi_prime = 0.0;  // E[psi']
  double e_combo = 0.0;      // E[psi psi'' + psi'^2]
};

ScoreMoments score_moments(const KernelBandwidths& bw, const NoiseModel& model,
                           double abs_tol = 1e-10);

struct EmsePrediction {
  double S = 0.0;
  double e_psi_sq = 0.0;
  double e_psi_prime = 0.0;
  double e_combo = 0.0;
  double trace_rx = 0.0;
  double step_size = 0.0;

  double denominator() const { return 2.0 * e_psi_prime - step_size * trace_rx * e_combo; }
};

/// Raised when the denominator is not positive: the step size is outside the
/// regime where the small-error expansion holds. The computed terms are kept.
class ValidityError : public NumericalError {
 public:
  ValidityError(const std::string& what, EmsePrediction components)
      : NumericalError(what), components_(components) {}

  const EmsePrediction& components() const noexcept { return components_; }

 private:
  EmsePrediction components_;
};

/// Kernel bandwidths of a MACC or MCC config; UsageError for other algorithms.
KernelBandwidths correntropy_bandwidths(const AlgorithmConfig& cfg);

EmsePrediction predict_emse(const AlgorithmConfig& cfg, const NoiseModel& model, double trace_rx,
                            double abs_tol = 1e-10);

/// Same prediction from precomputed moments.
EmsePrediction predict_emse(const ScoreMoments& moments, double step_size, double trace_rx);

}  // namespace acorr

#pragma once

// Online adaptive filters sharing one per-sample update
//
//   e = d - W^T x,    W <- W + mu * g(e) * x
//
// where g is the algorithm's score. MACC uses the asymmetric correntropy
// score; the others are the robust baselines it is compared against.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "acorr/kernel.hpp"

namespace acorr {

enum class Algorithm { MACC, MCC, LMS, SA, LMM, LLAD };

std::string_view to_string(Algorithm algorithm);

/// Parses a case-insensitive algorithm name ("macc", "lmm", ...).
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Hampel three-part redescending score: linear below xi, clipped at xi up to
/// delta1, ramped to zero at delta2, zero beyond.
struct LmmParams {
  double xi;
  double delta1;
  double delta2;
};

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::LMS;
  double step_size = 0.0;
  std::optional<KernelBandwidths> macc_bandwidths;
  std::optional<double> mcc_bandwidth;
  std::optional<LmmParams> lmm_params;
  std::optional<double> llad_alpha;

  static AlgorithmConfig macc(double mu, KernelBandwidths bw);
  static AlgorithmConfig mcc(double mu, double sigma);
  static AlgorithmConfig lms(double mu);
  static AlgorithmConfig sa(double mu);
  static AlgorithmConfig lmm(double mu, LmmParams params);
  static AlgorithmConfig llad(double mu, double alpha);

  /// Throws UsageError when the parameter group for `algorithm` is missing
  /// or out of range.
  void validate() const;
};

/// Scalar g(e) multiplying mu * x in the update. Config must be valid.
double update_score(const AlgorithmConfig& cfg, double e);

struct FilterState {
  Eigen::VectorXd weights;
  std::size_t iteration = 0;

  static FilterState zeros(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return weights.size(); }
};

/// One adaptation step in place; returns the a priori output error computed
/// with the pre-update weights. On DivergenceError the state is untouched.
double step(FilterState& state, const Eigen::Ref<const Eigen::VectorXd>& x, double d,
            const AlgorithmConfig& cfg);

struct Sample {
  Eigen::VectorXd x;
  double d;
};

struct TrajectoryRecord {
  std::size_t iteration;
  double e;
  std::optional<double> e_a;  // (W* - W_i)^T x_i
  std::optional<double> wep;  // ||W* - W_i||^2
};

/// Runs the filter over `inputs`, recording every iteration against the
/// pre-update weights. `state` holds the final weights on return.
std::vector<TrajectoryRecord> run(FilterState& state, const std::vector<Sample>& inputs,
                                  const AlgorithmConfig& cfg,
                                  const std::optional<Eigen::VectorXd>& reference = std::nullopt);

}  // namespace acorr

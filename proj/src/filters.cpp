#include "acorr/filters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "acorr/errors.hpp"

namespace acorr {

namespace {

double sign(double e) { return e > 0.0 ? 1.0 : (e < 0.0 ? -1.0 : 0.0); }

double hampel_score(double e, const LmmParams& p) {
  const double mag = std::abs(e);
  if (mag < p.xi) return e;
  if (mag < p.delta1) return p.xi * sign(e);
  if (mag < p.delta2) return p.xi * sign(e) * (p.delta2 - mag) / (p.delta2 - p.delta1);
  return 0.0;
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::MACC: return "MACC";
    case Algorithm::MCC: return "MCC";
    case Algorithm::LMS: return "LMS";
    case Algorithm::SA: return "SA";
    case Algorithm::LMM: return "LMM";
    case Algorithm::LLAD: return "LLAD";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto a : {Algorithm::MACC, Algorithm::MCC, Algorithm::LMS, Algorithm::SA, Algorithm::LMM,
                 Algorithm::LLAD}) {
    std::string candidate(to_string(a));
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (candidate == lower) return a;
  }
  return std::nullopt;
}

AlgorithmConfig AlgorithmConfig::macc(double mu, KernelBandwidths bw) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::MACC;
  cfg.step_size = mu;
  cfg.macc_bandwidths = bw;
  return cfg;
}

AlgorithmConfig AlgorithmConfig::mcc(double mu, double sigma) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::MCC;
  cfg.step_size = mu;
  cfg.mcc_bandwidth = sigma;
  return cfg;
}

AlgorithmConfig AlgorithmConfig::lms(double mu) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::LMS;
  cfg.step_size = mu;
  return cfg;
}

AlgorithmConfig AlgorithmConfig::sa(double mu) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::SA;
  cfg.step_size = mu;
  return cfg;
}

AlgorithmConfig AlgorithmConfig::lmm(double mu, LmmParams params) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::LMM;
  cfg.step_size = mu;
  cfg.lmm_params = params;
  return cfg;
}

AlgorithmConfig AlgorithmConfig::llad(double mu, double alpha) {
  AlgorithmConfig cfg;
  cfg.algorithm = Algorithm::LLAD;
  cfg.step_size = mu;
  cfg.llad_alpha = alpha;
  return cfg;
}

void AlgorithmConfig::validate() const {
  const std::string name(to_string(algorithm));
  if (!positive_finite(step_size)) {
    throw UsageError(name + ": step size must be positive and finite");
  }
  switch (algorithm) {
    case Algorithm::MACC:
      if (!macc_bandwidths) throw UsageError("MACC: bandwidths sigma_plus/sigma_minus required");
      break;
    case Algorithm::MCC:
      if (!mcc_bandwidth || !positive_finite(*mcc_bandwidth)) {
        throw UsageError("MCC: positive bandwidth sigma required");
      }
      break;
    case Algorithm::LMM: {
      if (!lmm_params) throw UsageError("LMM: xi, delta1, delta2 required");
      const auto& p = *lmm_params;
      if (!positive_finite(p.xi) || !positive_finite(p.delta1) || !positive_finite(p.delta2)) {
        throw UsageError("LMM: xi, delta1, delta2 must be positive");
      }
      if (!(p.xi <= p.delta1 && p.delta1 < p.delta2)) {
        throw UsageError("LMM: require xi <= delta1 < delta2");
      }
      break;
    }
    case Algorithm::LLAD:
      if (!llad_alpha || !positive_finite(*llad_alpha)) {
        throw UsageError("LLAD: positive alpha required");
      }
      break;
    case Algorithm::LMS:
    case Algorithm::SA:
      break;
  }
}

double update_score(const AlgorithmConfig& cfg, double e) {
  switch (cfg.algorithm) {
    case Algorithm::MACC: return eval_score(e, *cfg.macc_bandwidths);
    case Algorithm::MCC: return gaussian_score(e, *cfg.mcc_bandwidth);
    case Algorithm::LMS: return e;
    case Algorithm::SA: return sign(e);
    case Algorithm::LMM: return hampel_score(e, *cfg.lmm_params);
    case Algorithm::LLAD: {
      const double alpha = *cfg.llad_alpha;
      return alpha * e / (1.0 + alpha * std::abs(e));
    }
  }
  return 0.0;
}

FilterState FilterState::zeros(Eigen::Index dim) {
  if (dim <= 0) throw UsageError("filter dimension must be positive");
  return FilterState{Eigen::VectorXd::Zero(dim), 0};
}

double step(FilterState& state, const Eigen::Ref<const Eigen::VectorXd>& x, double d,
            const AlgorithmConfig& cfg) {
  if (x.size() != state.dim()) {
    throw UsageError("input length " + std::to_string(x.size()) +
                     " does not match filter dimension " + std::to_string(state.dim()));
  }
  if (!std::isfinite(d) || !x.allFinite()) {
    throw DomainError("filter input and desired signal must be finite");
  }
  const double e = d - state.weights.dot(x);
  if (!std::isfinite(e)) {
    throw DivergenceError("non-finite output error", state.iteration);
  }
  const double gain = cfg.step_size * update_score(cfg, e);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!std::isfinite(state.weights[j] + gain * x[j])) {
      throw DivergenceError(std::string(to_string(cfg.algorithm)) +
                                " diverged at iteration " + std::to_string(state.iteration),
                            state.iteration);
    }
  }
  state.weights += gain * x;
  ++state.iteration;
  return e;
}

std::vector<TrajectoryRecord> run(FilterState& state, const std::vector<Sample>& inputs,
                                  const AlgorithmConfig& cfg,
                                  const std::optional<Eigen::VectorXd>& reference) {
  cfg.validate();
  if (reference && reference->size() != state.dim()) {
    throw UsageError("reference weight vector has the wrong dimension");
  }
  std::vector<TrajectoryRecord> records;
  records.reserve(inputs.size());
  for (const auto& sample : inputs) {
    TrajectoryRecord rec{state.iteration, 0.0, std::nullopt, std::nullopt};
    if (reference && sample.x.size() == state.dim()) {
      const Eigen::VectorXd diff = *reference - state.weights;
      rec.e_a = diff.dot(sample.x);
      rec.wep = diff.squaredNorm();
    }
    rec.e = step(state, sample.x, sample.d, cfg);
    records.push_back(rec);
  }
  return records;
}

}  // namespace acorr

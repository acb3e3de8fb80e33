#include "acorr/emse.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <sstream>

namespace acorr {

namespace {

// Multiples of each characteristic width placed as initial panel edges, so a
// narrow feature near the origin is never hidden inside one wide panel.
constexpr std::array<double, 7> kScaleMultiples = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

std::vector<double> partition(const NoiseModel& model, std::span<const double> extra_points) {
  const auto [lo, hi] = support(model);
  std::vector<double> points{lo, hi, 0.0};
  const auto bp = breakpoints(model);
  points.insert(points.end(), bp.begin(), bp.end());
  auto add_scales = [&](const ComponentDist& d) {
    for (double centre : component_breakpoints(d)) {
      for (double s : component_scales(d)) {
        for (double k : kScaleMultiples) {
          points.push_back(centre - k * s);
          points.push_back(centre + k * s);
        }
      }
    }
  };
  if (model.occurrence_prob < 1.0) add_scales(model.main);
  if (model.occurrence_prob > 0.0) add_scales(model.outlier);
  points.insert(points.end(), extra_points.begin(), extra_points.end());

  std::vector<double> kept;
  for (double p : points) {
    if (std::isfinite(p) && p >= lo && p <= hi) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

}  // namespace

double expect(const std::function<double(double)>& f, const NoiseModel& model, double abs_tol,
              std::span<const double> extra_points) {
  model.validate();
  if (!(abs_tol > 0.0)) throw UsageError("expect: abs_tol must be positive");
  const auto points = partition(model, extra_points);
  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  const auto integrand = [&](double v) {
    const double p = density(model, v);
    return p == 0.0 ? 0.0 : f(v) * p;
  };
  return integrate(integrand, points, opts).value;
}

ScoreMoments score_moments(const KernelBandwidths& bw, const NoiseModel& model, double abs_tol) {
  std::vector<double> extra;
  for (double s : {bw.sigma_plus(), -bw.sigma_minus()}) {
    for (double k : kScaleMultiples) extra.push_back(k * s);
  }
  ScoreMoments m;
  m.e_psi_sq = expect(
      [&](double v) {
        const double psi = eval_score(v, bw);
        return psi * psi;
      },
      model, abs_tol, extra);
  m.e_psi_prime = expect([&](double v) { return eval_score_prime(v, bw); }, model, abs_tol, extra);
  m.e_combo = expect(
      [&](double v) {
        const double d1 = eval_score_prime(v, bw);
        return eval_score(v, bw) * eval_score_double_prime(v, bw) + d1 * d1;
      },
      model, abs_tol, extra);
  return m;
}

KernelBandwidths correntropy_bandwidths(const AlgorithmConfig& cfg) {
  cfg.validate();
  switch (cfg.algorithm) {
    case Algorithm::MACC: return *cfg.macc_bandwidths;
    case Algorithm::MCC: return KernelBandwidths::symmetric(*cfg.mcc_bandwidth);
    default:
      throw UsageError("EMSE prediction is only defined for MACC and MCC, got " +
                       std::string(to_string(cfg.algorithm)));
  }
}

EmsePrediction predict_emse(const ScoreMoments& moments, double step_size, double trace_rx) {
  if (!(step_size > 0.0) || !(trace_rx > 0.0)) {
    throw UsageError("predict_emse: step size and Tr(Rx) must be positive");
  }
  EmsePrediction p;
  p.e_psi_sq = moments.e_psi_sq;
  p.e_psi_prime = moments.e_psi_prime;
  p.e_combo = moments.e_combo;
  p.trace_rx = trace_rx;
  p.step_size = step_size;
  const double denom = p.denominator();
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "EMSE formula invalid at mu=" << step_size << ": denominator " << denom
        << " is not positive";
    p.S = std::numeric_limits<double>::quiet_NaN();
    throw ValidityError(msg.str(), p);
  }
  p.S = step_size * trace_rx * p.e_psi_sq / denom;
  return p;
}

EmsePrediction predict_emse(const AlgorithmConfig& cfg, const NoiseModel& model, double trace_rx,
                            double abs_tol) {
  const auto bw = correntropy_bandwidths(cfg);
  return predict_emse(score_moments(bw, model, abs_tol), cfg.step_size, trace_rx);
}

}  // namespace acorr

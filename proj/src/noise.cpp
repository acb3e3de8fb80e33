#include "acorr/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "acorr/errors.hpp"

namespace acorr {

namespace {

constexpr double kGaussianTailSds = 40.0;
constexpr double kFTailDensity = 1e-16;

double normal_pdf(double v, double mean, double variance) {
  const double z = v - mean;
  return std::exp(-z * z / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double f_pdf(double x, int d1, int d2) {
  if (x < 0.0) return 0.0;
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  if (x == 0.0) {
    if (d1 > 2) return 0.0;
    if (d1 == 2) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double log_pdf = a * std::log(static_cast<double>(d1) / d2) + (a - 1.0) * std::log(x) -
                         (a + b) * std::log1p(static_cast<double>(d1) * x / d2) - log_beta;
  return std::exp(log_pdf);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double ShiftedF::mode() const {
  if (d1 <= 2) return 0.0;
  return (static_cast<double>(d1 - 2) / d1) * (static_cast<double>(d2) / (d2 + 2));
}

void validate(const ComponentDist& dist) {
  std::visit(overloaded{
                 [](const Gaussian& g) {
                   if (!std::isfinite(g.mean) || !positive_finite(g.variance)) {
                     throw UsageError("gaussian: finite mean and positive variance required");
                   }
                 },
                 [](const SplitGaussian& s) {
                   if (!positive_finite(s.var_neg) || !positive_finite(s.var_pos)) {
                     throw UsageError("split_gaussian: variances must be positive");
                   }
                 },
                 [](const ShiftedF& f) {
                   if (f.d1 <= 0 || f.d2 <= 0) {
                     throw UsageError("shifted_f: degrees of freedom must be positive integers");
                   }
                 },
             },
             dist);
}

void NoiseModel::validate() const {
  if (!(occurrence_prob >= 0.0 && occurrence_prob <= 1.0)) {
    throw UsageError("noise occurrence probability c must lie in [0, 1]");
  }
  acorr::validate(main);
  acorr::validate(outlier);
}

std::string describe(const ComponentDist& dist) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Gaussian& g) { os << "N(" << g.mean << ", " << g.variance << ")"; },
                 [&](const SplitGaussian& s) {
                   os << "SplitN(neg " << s.var_neg << ", pos " << s.var_pos << ")";
                 },
                 [&](const ShiftedF& f) { os << "F(" << f.d1 << ", " << f.d2 << ") - mode"; },
             },
             dist);
  return os.str();
}

double component_density(const ComponentDist& dist, double v) {
  return std::visit(overloaded{
                        [v](const Gaussian& g) { return normal_pdf(v, g.mean, g.variance); },
                        [v](const SplitGaussian& s) {
                          return v < 0.0 ? normal_pdf(v, 0.0, s.var_neg)
                                         : normal_pdf(v, 0.0, s.var_pos);
                        },
                        [v](const ShiftedF& f) { return f_pdf(v + f.mode(), f.d1, f.d2); },
                    },
                    dist);
}

double density(const NoiseModel& model, double v) {
  const double c = model.occurrence_prob;
  double p = 0.0;
  if (c < 1.0) p += (1.0 - c) * component_density(model.main, v);
  if (c > 0.0) p += c * component_density(model.outlier, v);
  return p;
}

double sample_component(const ComponentDist& dist, Rng& rng) {
  return std::visit(overloaded{
                        [&rng](const Gaussian& g) {
                          return g.mean + std::sqrt(g.variance) * rng.normal();
                        },
                        [&rng](const SplitGaussian& s) {
                          const bool negative = rng.uniform() < 0.5;
                          const double z = std::abs(rng.normal());
                          return negative ? -std::sqrt(s.var_neg) * z : std::sqrt(s.var_pos) * z;
                        },
                        [&rng](const ShiftedF& f) {
                          const double num = rng.chi_square(f.d1) / f.d1;
                          const double den = rng.chi_square(f.d2) / f.d2;
                          return num / den - f.mode();
                        },
                    },
                    dist);
}

std::vector<double> sample_component(const ComponentDist& dist, Rng& rng, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = sample_component(dist, rng);
  return out;
}

double sample(const NoiseModel& model, Rng& rng) {
  const bool outlier = rng.uniform() < model.occurrence_prob;
  return sample_component(outlier ? model.outlier : model.main, rng);
}

std::vector<double> sample(const NoiseModel& model, Rng& rng, std::size_t n) {
  model.validate();
  std::vector<double> out(n);
  for (auto& v : out) v = sample(model, rng);
  return out;
}

std::vector<double> component_breakpoints(const ComponentDist& dist) {
  return std::visit(overloaded{
                        [](const Gaussian& g) { return std::vector<double>{g.mean}; },
                        [](const SplitGaussian&) { return std::vector<double>{0.0}; },
                        [](const ShiftedF& f) { return std::vector<double>{-f.mode(), 0.0}; },
                    },
                    dist);
}

std::vector<double> component_scales(const ComponentDist& dist) {
  return std::visit(overloaded{
                        [](const Gaussian& g) { return std::vector<double>{std::sqrt(g.variance)}; },
                        [](const SplitGaussian& s) {
                          return std::vector<double>{std::sqrt(s.var_neg), std::sqrt(s.var_pos)};
                        },
                        [](const ShiftedF& f) {
                          // Spread of F near its mode; the tail is handled by the support edge.
                          return std::vector<double>{std::max(f.mode(), 0.25), 1.0};
                        },
                    },
                    dist);
}

std::pair<double, double> component_support(const ComponentDist& dist) {
  return std::visit(
      overloaded{
          [](const Gaussian& g) {
            const double r = kGaussianTailSds * std::sqrt(g.variance);
            return std::pair{g.mean - r, g.mean + r};
          },
          [](const SplitGaussian& s) {
            return std::pair{-kGaussianTailSds * std::sqrt(s.var_neg),
                             kGaussianTailSds * std::sqrt(s.var_pos)};
          },
          [](const ShiftedF& f) {
            const double mode = f.mode();
            // Walk out from the mode until the density is negligible, then bisect.
            double lo = std::max(mode, 1.0);
            double hi = 2.0 * lo;
            while (f_pdf(hi, f.d1, f.d2) >= kFTailDensity) {
              lo = hi;
              hi *= 2.0;
              if (hi > 1e300) throw NumericalError("shifted_f: density tail does not decay");
            }
            for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
              const double mid = 0.5 * (lo + hi);
              (f_pdf(mid, f.d1, f.d2) >= kFTailDensity ? lo : hi) = mid;
            }
            return std::pair{-mode, hi - mode};
          },
      },
      dist);
}

std::pair<double, double> support(const NoiseModel& model) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto merge = [&](const ComponentDist& d) {
    const auto [a, b] = component_support(d);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  };
  if (model.occurrence_prob < 1.0) merge(model.main);
  if (model.occurrence_prob > 0.0) merge(model.outlier);
  return {lo, hi};
}

std::vector<double> breakpoints(const NoiseModel& model) {
  std::vector<double> points;
  auto add = [&](const ComponentDist& d) {
    const auto bp = component_breakpoints(d);
    points.insert(points.end(), bp.begin(), bp.end());
  };
  if (model.occurrence_prob < 1.0) add(model.main);
  if (model.occurrence_prob > 0.0) add(model.outlier);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace acorr

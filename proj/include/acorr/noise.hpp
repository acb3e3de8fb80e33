#pragma once

// Noise distributions for system-identification experiments.
//
// A NoiseModel is the two-component mixture v = (1 - a) A + a B with
// a ~ Bernoulli(c): A is the main disturbance and B the impulsive outlier
// process. Each component is one of
//
//   Gaussian(mean, variance)
//   SplitGaussian(var_neg, var_pos)  N(0, var_neg) on v < 0, N(0, var_pos) on v >= 0,
//                                    each half carrying mass 1/2
//   ShiftedF(d1, d2)                 F(d1, d2) translated so its mode sits at 0

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "acorr/rng.hpp"

namespace acorr {

struct Gaussian {
  double mean = 0.0;
  double variance = 1.0;
};

struct SplitGaussian {
  double var_neg = 1.0;
  double var_pos = 1.0;
};

struct ShiftedF {
  int d1 = 5;
  int d2 = 14;

  /// Mode of F(d1, d2); zero when d1 <= 2.
  double mode() const;
};

using ComponentDist = std::variant<Gaussian, SplitGaussian, ShiftedF>;

struct NoiseModel {
  double occurrence_prob = 0.0;  // c
  ComponentDist main = Gaussian{};
  ComponentDist outlier = Gaussian{};

  /// Throws UsageError for c outside [0, 1] or invalid component parameters.
  void validate() const;
};

void validate(const ComponentDist& dist);
std::string describe(const ComponentDist& dist);

double component_density(const ComponentDist& dist, double v);
double density(const NoiseModel& model, double v);

double sample_component(const ComponentDist& dist, Rng& rng);
std::vector<double> sample_component(const ComponentDist& dist, Rng& rng, std::size_t n);

double sample(const NoiseModel& model, Rng& rng);
std::vector<double> sample(const NoiseModel& model, Rng& rng, std::size_t n);

/// Points where the component density is not smooth (centre, kink, support edge).
std::vector<double> component_breakpoints(const ComponentDist& dist);

/// Characteristic widths used to seed quadrature subdivision.
std::vector<double> component_scales(const ComponentDist& dist);

/// Finite interval outside which the component density is negligible:
/// +-40 standard deviations for Gaussian branches, and for ShiftedF from the
/// support edge up to where the density drops below 1e-16.
std::pair<double, double> component_support(const ComponentDist& dist);

/// Union of the component supports of every component with nonzero weight.
std::pair<double, double> support(const NoiseModel& model);

/// Breakpoints of every component with nonzero weight.
std::vector<double> breakpoints(const NoiseModel& model);

}  // namespace acorr

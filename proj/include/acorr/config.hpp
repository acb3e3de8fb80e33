#pragma once

// Line-oriented experiment configuration.
//
//   # comment
//   system.true_weights = 0.1, 0.2, 0.3
//   noise.c = 0.1
//   noise.main.kind = split_gaussian
//   algorithms = macc, lms
//   macc.mu = 0.0175
//
// Keys not set keep the step-size-study defaults (see emse_study_config),
// except the algorithm list, which is replaced whenever `algorithms` is given.
// Every key must be consumed; leftovers are reported as unknown.

#include <iosfwd>
#include <string>

#include "acorr/harness.hpp"

namespace acorr {

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace acorr

#pragma once

// Seeded Monte Carlo system identification.
//
// Every run r draws its own input and noise streams from (base_seed, r), so
// averaged curves do not depend on run scheduling, and every algorithm in a
// run sees the same data. Desired signal: d_i = W*^T x_i + v_i with
// x_i ~ N(0, input_variance I).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acorr/emse.hpp"
#include "acorr/filters.hpp"
#include "acorr/noise.hpp"

namespace acorr {

struct NamedAlgorithm {
  std::string label;
  AlgorithmConfig config;
};

struct ExperimentConfig {
  Eigen::VectorXd true_weights;
  double input_variance = 1.0;
  std::optional<double> trace_rx;  // defaults to dim * input_variance
  NoiseModel noise;
  std::vector<NamedAlgorithm> algorithms;
  std::size_t num_runs = 100;
  std::size_t num_iterations = 40000;
  std::size_t steady_state_window = 500;
  std::size_t decimation = 10;
  std::uint64_t base_seed = 1;
  std::string output_path;
  std::vector<double> mu_grid;
  double theory_abs_tol = 1e-10;
  unsigned threads = 0;  // 0: one per hardware thread

  void validate() const;
  Eigen::Index dim() const { return true_weights.size(); }
  double input_trace() const;
};

/// The 9-tap symmetric system [0.1 0.2 0.3 0.4 0.5 0.4 0.3 0.2 0.1].
Eigen::VectorXd reference_system();

/// Contaminated Gaussian: c = 0.1, main N(0, 1), outliers N(0, 10000).
NoiseModel contaminated_gaussian_noise();

/// Step-size study defaults: reference system, unit white input, contaminated
/// Gaussian noise, 100 runs x 40000 iterations, 500-iteration window, one
/// MACC filter.
ExperimentConfig emse_study_config();

/// Five-algorithm comparison (case 1: split-Gaussian main noise, case 2:
/// shifted F(5, 14)), each with the outlier process N(0, 10000) at c = 0.1,
/// 500 runs, using the published parameter table.
ExperimentConfig comparison_config(int which_case);

/// SA, LMM, LLAD, MCC and MACC with the tuned parameters for case 1 or 2.
std::vector<NamedAlgorithm> comparison_algorithms(int which_case);

struct AlgorithmCurves {
  std::string label;
  std::vector<std::size_t> iterations;  // decimated iteration indices
  std::vector<double> mean_wep;
  std::vector<double> mean_ea_sq;
  double steady_state_emse = 0.0;  // mean e_a^2 over the final window
  double steady_state_wep = 0.0;   // mean WEP over the final window
  std::size_t completed_runs = 0;
  std::size_t diverged_runs = 0;
};

struct IdentificationResult {
  std::vector<AlgorithmCurves> algorithms;
};

IdentificationResult run_identification(const ExperimentConfig& config);

/// run_identification with at least one algorithm required; the result's
/// mean WEP curves are the comparison output.
IdentificationResult compare_algorithms(const ExperimentConfig& config);

struct SweepRow {
  double mu = 0.0;
  ScoreMoments moments;
  std::optional<double> s_theory;  // empty when the formula is outside its validity regime
  double s_simulated = 0.0;
  std::size_t diverged_runs = 0;
};

/// Theory and simulation of steady-state EMSE on a step-size grid, for the
/// first MACC or MCC algorithm in the config. All grid points share the same
/// per-run data streams.
std::vector<SweepRow> emse_sweep(const ExperimentConfig& config, std::span<const double> mu_grid);

struct TheoryRow {
  double mu = 0.0;
  ScoreMoments moments;
  std::optional<double> s_theory;
};

std::vector<TheoryRow> theory_table(const ExperimentConfig& config, std::span<const double> mu_grid);

// CSV writers. Header row first; reals carry 17 significant digits; a missing
// value is an empty cell.

/// algorithm,iteration,mean_wep,mean_ea_sq
void write_curves_csv(std::ostream& os, const IdentificationResult& result);
/// algorithm,steady_state_emse,steady_state_wep,completed_runs,diverged_runs
void write_summary_csv(std::ostream& os, const IdentificationResult& result);
/// iteration,<label 1>,<label 2>,... (mean WEP)
void write_comparison_csv(std::ostream& os, const IdentificationResult& result);
/// mu,S_theory,S_simulated,e_psi_sq,e_psi_prime,e_combo
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
/// mu,S_theory,e_psi_sq,e_psi_prime,e_combo
void write_theory_csv(std::ostream& os, std::span<const TheoryRow> rows);

}  // namespace acorr

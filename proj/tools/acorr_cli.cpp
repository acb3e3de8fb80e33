// Command-line front end for the Monte Carlo experiments.
//
//   acorr simulate --config configs/emse_study.conf --out curves.csv
//   acorr sweep    --config configs/emse_study.conf --out sweep.csv
//   acorr compare  --config configs/comparison_case1.conf --out wep.csv
//   acorr theory   --config configs/emse_study.conf

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "acorr/config.hpp"
#include "acorr/harness.hpp"

namespace {

constexpr std::size_t kFastRuns = 20;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<unsigned> threads;
  std::string out;
  bool fast = false;
};

acorr::ExperimentConfig resolve(const Options& opts) {
  auto cfg = acorr::load_config(opts.config_path);
  if (opts.seed) cfg.base_seed = *opts.seed;
  if (opts.fast) {
    cfg.num_runs = kFastRuns;
    std::cerr << "fast mode: " << kFastRuns
              << " runs per experiment; results are a smoke test, not a reproduction\n";
  }
  if (opts.runs) cfg.num_runs = *opts.runs;
  if (opts.threads) cfg.threads = *opts.threads;
  if (!opts.out.empty()) cfg.output_path = opts.out;
  cfg.validate();
  return cfg;
}

// Writes CSV to output_path, or stdout when none is configured.
template <class Writer>
void emit(const acorr::ExperimentConfig& cfg, Writer write) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw acorr::UsageError("cannot write '" + cfg.output_path + "'");
  write(out);
  if (!out) throw acorr::UsageError("error writing '" + cfg.output_path + "'");
}

std::vector<double> grid_or_step(const acorr::ExperimentConfig& cfg) {
  if (!cfg.mu_grid.empty()) return cfg.mu_grid;
  for (const auto& a : cfg.algorithms) {
    if (a.config.algorithm == acorr::Algorithm::MACC ||
        a.config.algorithm == acorr::Algorithm::MCC) {
      return {a.config.step_size};
    }
  }
  throw acorr::UsageError("no step-size grid and no MACC/MCC algorithm configured");
}

void report_divergence(const acorr::IdentificationResult& result) {
  for (const auto& c : result.algorithms) {
    if (c.diverged_runs > 0) {
      std::cerr << "warning: " << c.label << " diverged in " << c.diverged_runs << " run(s)\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric correntropy adaptive filtering experiments"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Override run.seed");
    sub->add_option("--out", opts.out, "Output CSV path ('-' for stdout)");
    sub->add_option("--runs", opts.runs, "Override run.runs");
    sub->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    sub->add_flag("--fast", opts.fast, "Few runs, for smoke testing");
  };

  auto* simulate = app.add_subcommand("simulate", "Run the identification experiment; write mean curves");
  auto* sweep = app.add_subcommand("sweep", "Theoretical vs simulated steady-state EMSE over the step-size grid");
  auto* compare = app.add_subcommand("compare", "Mean WEP curves of every configured algorithm");
  auto* theory = app.add_subcommand("theory", "Theoretical steady-state EMSE only");
  for (auto* sub : {simulate, sweep, compare, theory}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = resolve(opts);
    if (simulate->parsed()) {
      const auto result = acorr::run_identification(cfg);
      report_divergence(result);
      emit(cfg, [&](std::ostream& os) { acorr::write_curves_csv(os, result); });
      acorr::write_summary_csv(std::cerr, result);
    } else if (compare->parsed()) {
      const auto result = acorr::compare_algorithms(cfg);
      report_divergence(result);
      emit(cfg, [&](std::ostream& os) { acorr::write_comparison_csv(os, result); });
      acorr::write_summary_csv(std::cerr, result);
    } else if (sweep->parsed()) {
      const auto grid = grid_or_step(cfg);
      const auto rows = acorr::emse_sweep(cfg, grid);
      emit(cfg, [&](std::ostream& os) { acorr::write_sweep_csv(os, rows); });
    } else if (theory->parsed()) {
      const auto grid = grid_or_step(cfg);
      const auto rows = acorr::theory_table(cfg, grid);
      emit(cfg, [&](std::ostream& os) { acorr::write_theory_csv(os, rows); });
    }
  } catch (const acorr::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}

#include <catch_amalgamated.hpp>

#include <sstream>

#include "acorr/config.hpp"

using namespace acorr;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.conf");
}

}  // namespace

TEST_CASE("empty config gives the step-size study defaults") {
  const auto cfg = parse("# nothing\n\n");
  CHECK(cfg.true_weights == reference_system());
  CHECK(cfg.num_runs == 100);
  REQUIRE(cfg.algorithms.size() == 1);
  CHECK(cfg.algorithms[0].config.algorithm == Algorithm::MACC);
}

TEST_CASE("full config") {
  const auto cfg = parse(R"(
system.true_weights = 1, -2.5   # two taps
system.input_variance = 2
noise.c = 0.05
noise.main.kind = split_gaussian
noise.main.var_neg = 0.5
noise.main.var_pos = 5
noise.outlier.kind = shifted_f
noise.outlier.d1 = 5
noise.outlier.d2 = 14
run.runs = 7
run.iterations = 1000
run.steady_state_window = 100
run.seed = 99
run.decimation = 4
algorithms = fast, mylmm, mcc, llad, sa, lms
fast.kind = macc
fast.mu = 0.02
fast.sigma_plus = 0.5
fast.sigma_minus = 2
mylmm.kind = LMM
mylmm.mu = 0.01
mylmm.xi = 0.4
mylmm.delta1 = 8
mylmm.delta2 = 10.2
mcc.mu = 0.009
mcc.sigma = 2.4
llad.mu = 0.004
llad.alpha = 4.6
sa.mu = 0.003
lms.mu = 0.001
sweep.mu_grid = 0.01, 0.02
theory.abs_tol = 1e-9
output.path = out.csv
)");
  CHECK(cfg.dim() == 2);
  CHECK(cfg.input_trace() == 4.0);
  CHECK(cfg.noise.occurrence_prob == 0.05);
  CHECK(std::get<SplitGaussian>(cfg.noise.main).var_pos == 5.0);
  CHECK(std::get<ShiftedF>(cfg.noise.outlier).d2 == 14);
  CHECK(cfg.num_runs == 7);
  CHECK(cfg.base_seed == 99);
  CHECK(cfg.decimation == 4);
  REQUIRE(cfg.algorithms.size() == 6);
  CHECK(cfg.algorithms[0].label == "fast");
  CHECK(cfg.algorithms[0].config.macc_bandwidths->sigma_minus() == 2.0);
  CHECK(cfg.algorithms[1].config.lmm_params->delta2 == 10.2);
  CHECK(cfg.algorithms[2].config.algorithm == Algorithm::MCC);
  CHECK(cfg.algorithms[5].config.algorithm == Algorithm::LMS);
  CHECK(cfg.mu_grid == std::vector<double>{0.01, 0.02});
  CHECK(cfg.theory_abs_tol == 1e-9);
  CHECK(cfg.output_path == "out.csv");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("run.rnus = 3\n"), UsageError);
  CHECK_THROWS_AS(parse("run.runs = 3\nrun.runs = 4\n"), UsageError);
  CHECK_THROWS_AS(parse("run.runs = three\n"), UsageError);
  CHECK_THROWS_AS(parse("run.runs = -3\n"), UsageError);
  CHECK_THROWS_AS(parse("just some text\n"), UsageError);
  CHECK_THROWS_AS(parse("noise.main.kind = cauchy\n"), UsageError);
  CHECK_THROWS_AS(parse("noise.main.variance = 2\n"), UsageError);  // kind missing
  CHECK_THROWS_AS(parse("noise.main.kind = gaussian\nnoise.main.variance = 1\nnoise.main.d1 = 3\n"),
                  UsageError);
  CHECK_THROWS_AS(parse("algorithms = macc\nmacc.mu = 0.1\n"), UsageError);  // bandwidths
  CHECK_THROWS_AS(parse("algorithms = foo\nfoo.mu = 0.1\n"), UsageError);    // unknown kind
  CHECK_THROWS_AS(parse("algorithms = lms\nlms.mu = 0.1\nmcc.mu = 0.2\n"), UsageError);
  CHECK_THROWS_AS(parse("algorithms = noise\n"), UsageError);
  CHECK_THROWS_AS(parse("algorithms = lms, lms\nlms.mu = 0.1\n"), UsageError);
  CHECK_THROWS_AS(parse("run.iterations = 100\n"), UsageError);  // window 500 > 100
  CHECK_THROWS_AS(parse("noise.c = 2\n"), UsageError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.conf"), UsageError);

  try {
    parse("\n\nrun.rnus = 3\n");
  } catch (const UsageError& err) {
    CHECK(std::string(err.what()).find("test.conf:3") != std::string::npos);
  }
}

TEST_CASE("shipped configs load") {
  const std::string dir = std::string(ACORR_SOURCE_DIR) + "/configs/";
  const auto study = load_config(dir + "emse_study.conf");
  CHECK(study.mu_grid == emse_study_config().mu_grid);
  CHECK(study.algorithms[0].config.macc_bandwidths == emse_study_config().algorithms[0].config.macc_bandwidths);

  for (int which : {1, 2}) {
    const auto cfg = load_config(dir + "comparison_case" + std::to_string(which) + ".conf");
    const auto ref = comparison_config(which);
    REQUIRE(cfg.algorithms.size() == ref.algorithms.size());
    CHECK(cfg.num_runs == ref.num_runs);
    CHECK(cfg.noise.main.index() == ref.noise.main.index());
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto& x = cfg.algorithms[a].config;
      const auto& y = ref.algorithms[a].config;
      CHECK(x.algorithm == y.algorithm);
      CHECK(x.step_size == y.step_size);
      CHECK(x.macc_bandwidths == y.macc_bandwidths);
      CHECK(x.mcc_bandwidth == y.mcc_bandwidth);
      CHECK(x.llad_alpha == y.llad_alpha);
      CHECK(x.lmm_params.has_value() == y.lmm_params.has_value());
      if (x.lmm_params) CHECK(x.lmm_params->delta1 == y.lmm_params->delta1);
    }
  }
}

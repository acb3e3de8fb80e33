#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "acorr/errors.hpp"
#include "acorr/kernel.hpp"

using namespace acorr;
using Catch::Approx;

namespace {

// Central difference with step h.
template <class F>
double central_diff(F f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// |numeric - analytic| <= rtol * max(1, |analytic|): relative where the
// derivative is O(1) or larger, absolute near its zeros.
bool fd_close(double numeric, double analytic, double rtol = 1e-6) {
  return std::abs(numeric - analytic) <= rtol * std::max(1.0, std::abs(analytic));
}

const KernelBandwidths kFigureBw(0.5, 2.0);

}  // namespace

TEST_CASE("bandwidths reject non-positive or non-finite values") {
  CHECK_THROWS_AS(KernelBandwidths(0.0, 1.0), UsageError);
  CHECK_THROWS_AS(KernelBandwidths(1.0, -2.0), UsageError);
  CHECK_THROWS_AS(KernelBandwidths(std::numeric_limits<double>::infinity(), 1.0), UsageError);
  CHECK_THROWS_AS(KernelBandwidths(1.0, std::numeric_limits<double>::quiet_NaN()), UsageError);
  CHECK(KernelBandwidths::symmetric(1.5).is_symmetric());
}

TEST_CASE("kernel values") {
  CHECK(eval_kernel(0.0, kFigureBw) == 1.0);
  CHECK(eval_kernel(1.0, kFigureBw) == Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(eval_kernel(1.0, kFigureBw) == Approx(0.135335).margin(1e-6));
  CHECK(eval_kernel(-1.0, kFigureBw) == Approx(std::exp(-0.125)).epsilon(1e-15));
  CHECK(eval_kernel(-1.0, kFigureBw) == Approx(0.882497).margin(1e-6));
}

TEST_CASE("score values") {
  const KernelBandwidths unit(1.0, 2.0);
  CHECK(eval_score(0.0, unit) == 0.0);
  CHECK(eval_score(1.0, unit) == Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(eval_score(1.0, unit) == Approx(0.606531).margin(1e-6));
  CHECK(eval_score(-2.0, unit) == Approx(-0.5 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(eval_score(-2.0, unit) == Approx(-0.303265).margin(1e-6));
}

TEST_CASE("score derivative values") {
  const KernelBandwidths bw(1.0, 2.0);
  CHECK(eval_score_prime(1.0, bw) == Approx(0.0).margin(1e-16));
  // v = 0 takes the positive branch: 1 / sigma_plus^2.
  CHECK(eval_score_prime(0.0, bw) == 1.0);
  CHECK(eval_score_prime(-1.0, bw) == Approx(0.25 * std::exp(-0.125) * 0.75).epsilon(1e-15));
  CHECK(eval_score_prime(-1.0, bw) == Approx(0.165468).margin(1e-6));

  CHECK(eval_score_double_prime(0.0, bw) == 0.0);
  CHECK(eval_score_double_prime(1.0, bw) == Approx(-2.0 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(eval_score_double_prime(1.0, bw) == Approx(-1.213061).margin(1e-6));
  CHECK(eval_score_double_prime(std::sqrt(3.0), bw) == Approx(0.0).margin(1e-15));
  const KernelBandwidths wide(2.5, 0.3);
  CHECK(eval_score_double_prime(std::sqrt(3.0) * 2.5, wide) == Approx(0.0).margin(1e-15));
}

TEST_CASE("weight function values") {
  CHECK(eval_weight_xi(0.0, KernelBandwidths(1.0, 3.0)) == 0.5);
  CHECK(eval_weight_xi(0.0, KernelBandwidths(2.0, 3.0)) == 0.125);
  CHECK(eval_weight_xi(-50.0, KernelBandwidths(2.0, 3.0)) > 0.0);
}

TEST_CASE("non-finite arguments are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  for (double bad : {nan, inf, -inf}) {
    CHECK_THROWS_AS(eval_kernel(bad, kFigureBw), DomainError);
    CHECK_THROWS_AS(eval_score(bad, kFigureBw), DomainError);
    CHECK_THROWS_AS(eval_score_prime(bad, kFigureBw), DomainError);
    CHECK_THROWS_AS(eval_score_double_prime(bad, kFigureBw), DomainError);
    CHECK_THROWS_AS(eval_weight_xi(bad, kFigureBw), DomainError);
  }
}

TEST_CASE("equal bandwidths reduce exactly to the symmetric Gaussian") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> err(-20.0, 20.0);
  std::uniform_real_distribution<double> sig(0.05, 10.0);
  for (int k = 0; k < 10000; ++k) {
    const double e = err(gen);
    const double s = sig(gen);
    REQUIRE(eval_kernel(e, KernelBandwidths::symmetric(s)) == std::exp(-(e * e) / (2.0 * s * s)));
  }
}

TEST_CASE("kernel is bounded with its maximum only at zero") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> err(-1e3, 1e3);
  for (int k = 0; k < 5000; ++k) {
    const double e = err(gen);
    const double value = eval_kernel(e, KernelBandwidths(30.0, 40.0));
    REQUIRE(value > 0.0);
    REQUIRE(value <= 1.0);
    if (e != 0.0) REQUIRE(value < 1.0);
  }
}

TEST_CASE("kernel and score are continuous at the branch point") {
  const KernelBandwidths bw(0.3, 4.0);
  for (double eps = 1e-2; eps >= 1e-12; eps /= 10.0) {
    CHECK(eval_kernel(eps, bw) == Approx(1.0).margin(eps));
    CHECK(eval_kernel(-eps, bw) == Approx(1.0).margin(eps));
    CHECK(std::abs(eval_score(eps, bw)) <= eps / (0.3 * 0.3));
    CHECK(std::abs(eval_score(-eps, bw)) <= eps / (4.0 * 4.0));
  }
}

TEST_CASE("derivatives agree with central finite differences on each branch") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> sig(0.3, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int checked = 0;
  for (int branch : {+1, -1}) {
    for (int k = 0; k < 1000; ++k) {
      const KernelBandwidths bw(sig(gen), sig(gen));
      const double s = branch > 0 ? bw.sigma_plus() : bw.sigma_minus();
      // Stay inside the open branch, clear of the kink at zero.
      const double e = branch * (1e-4 + 6.0 * s * unit(gen));

      const double dk = central_diff([&](double t) { return eval_kernel(t, bw); }, e);
      REQUIRE(fd_close(dk, -eval_score(e, bw)));
      const double ds = central_diff([&](double t) { return eval_score(t, bw); }, e);
      REQUIRE(fd_close(ds, eval_score_prime(e, bw)));
      const double dp = central_diff([&](double t) { return eval_score_prime(t, bw); }, e);
      REQUIRE(fd_close(dp, eval_score_double_prime(e, bw)));
      ++checked;
    }
  }
  CHECK(checked == 2000);
}

TEST_CASE("score equals twice error times weight") {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> err(-10.0, 10.0);
  const KernelBandwidths bw(0.7, 2.2);
  for (int k = 0; k < 10000; ++k) {
    const double e = err(gen);
    const double psi = eval_score(e, bw);
    REQUIRE(psi == Approx(2.0 * e * eval_weight_xi(e, bw)).epsilon(4 * 2.2e-16).margin(1e-300));
  }
}

TEST_CASE("variable step size matches the score form") {
  const KernelBandwidths bw(0.7, 2.2);
  for (double e : {-3.0, -0.2, 0.4, 2.0}) {
    const double s = bw.for_error(e);
    CHECK(variable_step_size(e, 0.05, bw) ==
          Approx(0.05 / (s * s) * std::exp(-e * e / (2 * s * s))).epsilon(1e-14));
  }
}

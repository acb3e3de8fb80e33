#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace acorr {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_panels = 20000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over the
/// partition given by `points` (sorted, at least two entries). Each initial
/// panel edge stays a panel edge, so kinks placed there are never straddled.
/// The panel with the largest error estimate is bisected until the summed
/// estimate falls below abs_tol. Throws NumericalError when the panel budget
/// is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> points,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace acorr

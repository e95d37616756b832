#pragma once

// Composite Gauss rules used by the predictor and the reference oracle.

#include <functional>

#include "singquad/gauss_rule.hpp"

namespace singquad::detail {

/// Gauss-Legendre rule of the given order, built once and shared.
const QuadratureRule& cached_rule(int order);

/// \int_a^b g with one Gauss panel.
double gauss_panel(const std::function<double(double)>& g, double a, double b, int order);

struct GradedResult {
  double value = 0.0;    ///< every panel split in two
  double coarse = 0.0;   ///< unsplit panels
  double l1 = 0.0;       ///< \int |g| on the split panels
};

/// \int_0^{y_max} g for integrands that are smooth on (0, y_max] but may
/// behave like y^p (p > -1) at 0. Above `scale` the panels are uniform of
/// width `scale`; below it they halve geometrically until three successive
/// panels contribute less than 1e-18 of the running total.
GradedResult integrate_graded(const std::function<double(double)>& g, double scale,
                              double y_max, int order);

}  // namespace singquad::detail

#pragma once

#include <optional>

#include "singquad/singularity_model.hpp"

namespace singquad {

struct ExactIntegral {
  enum class Method { closed_form, split_adaptive };

  double value = 0.0;
  Method method = Method::closed_form;
  double est_abs_error = 0.0;
};

/// \int_{-1}^{1} f by closed form when one exists (power, power-log, and a
/// Gaussian envelope over an integer total exponent), otherwise by
/// split_adaptive_integral.
ExactIntegral exact_integral(const SingularIntegrand& f);

std::optional<ExactIntegral> closed_form_integral(const SingularIntegrand& f);

/// Splits at b, maps each side to t = |x - b| and integrates with 15-point
/// Gauss panels, bisecting any panel whose two halves disagree with it.
/// Throws ConvergenceError past 60 bisection levels.
ExactIntegral split_adaptive_integral(const SingularIntegrand& f);

}  // namespace singquad

#pragma once

#include "singquad/error_predictor.hpp"
#include "singquad/gauss_rule.hpp"
#include "singquad/singularity_model.hpp"

namespace singquad {

struct CorrectedResult {
  int n = 0;
  double raw = 0.0;
  double correction = 0.0;
  double corrected = 0.0;
};

/// Gauss-Legendre result plus the predicted leading remainder. Since
/// R_n = exact - quadrature, exact ~ quadrature + leading.
CorrectedResult corrected_integral(const SingularIntegrand& f, int n,
                                   const PredictorConfig& cfg = {});
CorrectedResult corrected_integral(const SingularIntegrand& f, const QuadratureRule& rule,
                                   const PredictorConfig& cfg = {});

}  // namespace singquad

#include "singquad/corrected_quadrature.hpp"

namespace singquad {

CorrectedResult corrected_integral(const SingularIntegrand& f, const QuadratureRule& rule,
                                   const PredictorConfig& cfg) {
  CorrectedResult out;
  out.n = rule.size();
  out.raw = apply_rule(rule, [&](double x) { return evaluate_real(f, x); });
  out.correction = leading_term(f, out.n, cfg);
  out.corrected = out.raw + out.correction;
  return out;
}

CorrectedResult corrected_integral(const SingularIntegrand& f, int n, const PredictorConfig& cfg) {
  return corrected_integral(f, compute_rule(n), cfg);
}

}  // namespace singquad

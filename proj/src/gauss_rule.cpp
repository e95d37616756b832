#include "singquad/gauss_rule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "singquad/errors.hpp"
#include "singquad/legendre.hpp"

namespace singquad {

QuadratureRule::QuadratureRule(int n) : nodes_(n), weights_(n) {
  if (n < 1) {
    throw std::invalid_argument("QuadratureRule: n must be >= 1");
  }
  constexpr int kMaxNewtonSteps = 50;
  const int half = n / 2;
  for (int j = 1; j <= half; ++j) {
    double x = std::cos((4.0 * j - 1.0) * std::numbers::pi / (4.0 * n + 2.0));
    double deriv = 0.0;
    bool converged = false;
    for (int step = 0; step < kMaxNewtonSteps; ++step) {
      const auto [pn, pm] = legendre_p_pair(n, x);
      deriv = n * (pm - x * pn) / (1.0 - x * x);
      const double dx = pn / deriv;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("QuadratureRule: Newton failed for node " + std::to_string(j) +
                             " of n = " + std::to_string(n));
    }
    deriv = legendre_p_deriv(n, x);
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    nodes_[n - j] = x;
    nodes_[j - 1] = -x;
    weights_[n - j] = w;
    weights_[j - 1] = w;
  }
  if (n % 2 == 1) {
    const double deriv = legendre_p_deriv(n, 0.0);
    nodes_[half] = 0.0;
    weights_[half] = 2.0 / (deriv * deriv);
  }
}

QuadratureRule compute_rule(int n) {
  if (n < 1 || n > 2000) {
    throw std::invalid_argument("compute_rule: n must lie in [1, 2000]");
  }
  return QuadratureRule(n);
}

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f) {
  const auto x = rule.nodes();
  const auto w = rule.weights();
  CompensatedSum sum;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double v = f(x[j]);
    if (!std::isfinite(v)) {
      throw std::domain_error("apply_rule: integrand is not finite at x = " +
                              std::to_string(x[j]));
    }
    sum.add(w[j] * v);
  }
  return sum.value();
}

double remainder(const QuadratureRule& rule, const std::function<double(double)>& f,
                 double exact) {
  return exact - apply_rule(rule, f);
}

}  // namespace singquad

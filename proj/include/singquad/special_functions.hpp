#pragma once

// Real-argument gamma and Riemann zeta, as needed by the closed-form
// coefficient bounds (arguments s = k + alpha + 1 > 1).

namespace singquad {

/// Gamma function for s > 0. Throws std::domain_error for s <= 0.
double gamma_fn(double s);

/// Riemann zeta for s > 1, by Euler-Maclaurin summation with a fixed
/// cutoff of 20 terms and four Bernoulli corrections. Throws
/// std::domain_error for s <= 1.
double zeta_fn(double s);

}  // namespace singquad

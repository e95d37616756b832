#pragma once

#include <optional>
#include <vector>

#include "singquad/singularity_model.hpp"

namespace singquad {

struct PredictorConfig {
  /// Upper limit M log n of the y-integral when it is not extended to infinity.
  double M = 10.0;
  /// Gauss points per panel of the graded composite rule.
  int panel_order = 32;
  /// Integrate over [0, inf) (truncated at 40 sin(phi), beyond which the
  /// integrand is below exp(-80) of its scale) for closed-form jumps.
  /// General jumps always use [0, M log n].
  bool extend_to_infinity = true;
};

/// Size of the remainder after the leading term is removed, by k + alpha
/// against 1.
enum class Regime {
  below_one,  ///< O(n^{-(2 alpha + 2k + 1)})
  critical,   ///< O(log n / n^{k + alpha + 2})
  above_one,  ///< O(n^{-(k + alpha + 2)})
};

struct OrderInfo {
  /// Leading term is O(n^{-order_exponent}), times log n when log_factor.
  double order_exponent = 0.0;
  bool log_factor = false;
  Regime regime = Regime::above_one;
  double regime_exponent = 0.0;
  bool regime_log = false;
};

/// Extremes of n^{order} R_n over cos(Psi) in [-1, 1].
struct CoefficientBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// False for odd k, where the bounds are strict and never reached.
  bool attainable = true;
};

/// For a power-log family with even k the extreme coefficients are affine in
/// log n: slope * log(n) + intercept, attained at cos(Psi) = +1 and -1.
struct LogAffineEnvelope {
  double slope_at_plus_one = 0.0;
  double intercept_at_plus_one = 0.0;
  double slope_at_minus_one = 0.0;
  double intercept_at_minus_one = 0.0;

  CoefficientBounds at(int n) const;
};

struct ErrorPrediction {
  double leading = 0.0;
  OrderInfo order;
  std::optional<CoefficientBounds> coefficient_bounds;
};

/// Leading remainder term
///   (1/n) \int Re([f(b + i y/n)] (i e^{-2y/s} + i cos Psi + sin Psi) / (cosh(2y/s) + cos Psi)) dy,
/// s = sin(phi), on graded composite Gauss panels. Throws ConvergenceError
/// if splitting every panel changes the value by more than 1e-3 relative.
double leading_term(const SingularIntegrand& f, int n, const PredictorConfig& cfg = {});

/// Parity-reduced real form of the leading term for a pure power family:
///   k = 0, 2 (mod 4): -+2 sin(alpha pi/2) n^{-(k+alpha+1)} \int y^{k+alpha} (e^{-2y/s} + cos Psi)/(cosh(2y/s) + cos Psi) dy
///   k = 1, 3 (mod 4): -+2 sin(alpha pi/2) n^{-(k+alpha+1)} \int y^{k+alpha} sin Psi/(cosh(2y/s) + cos Psi) dy
double power_case_leading(const SingularIntegrand& f, int n);

/// Closed-form extremes for a pure power family, with
///   U = sin(alpha pi/2) sin(phi)^{k+alpha+1} Gamma(k+alpha+1) zeta(k+alpha+1) / 2^{k+alpha-1}:
/// even k attains U and -(1 - 2^{-(k+alpha)}) U (sign order set by k mod 4);
/// odd k is bounded strictly by +-(1 - 2^{-(k+alpha+1)}) |U|, the exact value of
/// 2 |sin(alpha pi/2)| \int y^{k+alpha} / sinh(2y/s) dy.
CoefficientBounds coefficient_bounds(const SingularIntegrand& f);

/// Parity-reduced leading term for a pure power-log family. Keeps
/// log(y/n) = log y - log n inside the integral.
double log_case_leading(const SingularIntegrand& f, int n);

/// Even k only. Throws std::invalid_argument otherwise.
LogAffineEnvelope log_case_envelope(const SingularIntegrand& f);

/// Bounds on n^{k+beta+1} R_n for a pure power-log family at this n: the
/// log-affine envelope for even k, the strict symmetric bound
/// \int y^{k+beta} |bracket| / sinh(2y/s) dy for odd k.
CoefficientBounds log_case_bounds(const SingularIntegrand& f, int n);

/// \int_0^inf x^{k+alpha} (e^{-x} + c) / (cosh x + c) dx.
double psi0_defining_integral(int k, double alpha, double cos_psi0);

/// Root cos(Psi_0) in (-1 + 1e-9, 1) of psi0_defining_integral, by
/// bisection to a residual <= 1e-10. Requires k = 0, 2 (mod 4).
double psi0_solve(int k, double alpha);

/// n^{order} times the leading term, using the parity-reduced forms for
/// pure families and leading_term otherwise.
double predicted_coefficient(const SingularIntegrand& f, int n, const PredictorConfig& cfg = {});

/// All n in [n_min, n_max] ordered by |predicted_coefficient|, ties by smaller n.
/// Throws std::invalid_argument for an empty range.
std::vector<int> recommend_n(const SingularIntegrand& f, int n_min, int n_max,
                             const PredictorConfig& cfg = {});

/// The phase-only rule of thumb: cos((2n+1) phi) close to +-1 for even k,
/// close to 0 for odd k. Sorted by distance to the target, ties by smaller n.
std::vector<int> crude_recommendation(const SingularIntegrand& f, int n_min, int n_max);

OrderInfo predicted_order(const SingularIntegrand& f);

/// Leading term, order table and, for pure families, coefficient bounds.
ErrorPrediction predict(const SingularIntegrand& f, int n, const PredictorConfig& cfg = {});

}  // namespace singquad

#pragma once

#include <complex>
#include <utility>

namespace singquad {

using Complex = std::complex<double>;

/// xi = log(z + sqrt(z^2 - 1)) on the principal branch: Re(xi) >= 0, xi > 0
/// for real z > 1, and xi -> i*phi for z = cos(phi) approached from above.
struct XiCoordinate {
  Complex xi;
  Complex z;
};

/// Parameters of the sets on which the uniform asymptotic forms hold:
///   |cosh((n+1/2) xi)| >= L/n,  |sinh xi| >= eps,
/// and the Bernstein ellipse |z + sqrt(z^2-1)| = 1 + M log(n)/n.
struct AsymptoticDomain {
  double L = 1.0;
  double eps = 0.5;
  double M = 3.0;
};

/// Real z in (-1, 1) is taken on the upper side of the cut. Throws
/// std::domain_error within 1e-14 of z = +-1.
XiCoordinate xi_of_z(Complex z);

/// P_n by forward three-term recurrence. Throws std::overflow_error when
/// the value is not representable.
Complex legendre_p(int n, Complex z);
double legendre_p(int n, double x);

/// (P_n(x), P_{n-1}(x)) for real x; P_{-1} is reported as 0.
std::pair<double, double> legendre_p_pair(int n, double x);

/// P_n'(z) from (z^2 - 1) P_n' = n (z P_n - P_{n-1}); the closed form
/// (+-1)^{n-1} n(n+1)/2 at z = +-1.
Complex legendre_p_deriv(int n, Complex z);
double legendre_p_deriv(int n, double x);

/// Second-kind function Q_n(z) = 1/2 \int_{-1}^{1} P_n(x)/(z - x) dx for z
/// off [-1, 1]. The recessive ratio Q_k/Q_{k-1} comes from a backward
/// continued fraction seeded far above n and is normalized by
/// Q_0 = 1/2 log((z+1)/(z-1)). Very close to the cut, where the continued
/// fraction would need millions of terms, the forward recurrence is used
/// instead; its error growth there is bounded by |z + sqrt(z^2-1)|^{2n} ~ 1.
/// Throws std::domain_error within 1e-12 of the cut.
Complex legendre_q(int n, Complex z);

/// Two-exponential uniform approximation of P_n(cosh xi), including the
/// 1/(4n) and coth(xi)/(8n) corrections. Throws OutsideValidityDomain when
/// |sinh xi| < eps or |cosh((n+1/2) xi)| < L/n.
Complex p_asymptotic(int n, const XiCoordinate& xi, const AsymptoticDomain& dom = {});

/// Single-exponential uniform approximation of Q_n(cosh xi). Throws
/// OutsideValidityDomain when |sinh xi| < eps.
Complex q_asymptotic(int n, const XiCoordinate& xi, const AsymptoticDomain& dom = {});

/// Approximation of Q_n(z)/P_n(z) at z = b + i y/n, b = cos(phi):
///   -i pi / (exp(2y/sin(phi) + i Psi) + 1),  Psi = (2n+1) phi - pi/2.
Complex qp_ratio_asymptotic(int n, double b, double y);

/// n^{-2M}: the asymptotic bound on |Q_n/P_n| over the Bernstein ellipse
/// |z + sqrt(z^2-1)| = 1 + M log(n)/n.
double bernstein_ratio_bound(int n, double M);

/// Point on that ellipse at angle theta (validation helper).
Complex bernstein_ellipse_point(int n, double M, double theta);

}  // namespace singquad

#include "singquad/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "singquad/errors.hpp"

namespace singquad {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Puts real points of (-1, 1) on the upper side of the cut.
Complex upper_side(Complex z) {
  if (z.imag() == 0.0) {
    return {z.real(), 0.0};
  }
  return z;
}

// sqrt(z^2 - 1), positive for z > 1 and continuous off [-1, 1].
Complex sqrt_z2m1(Complex z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

void check_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw std::overflow_error(std::string(what) + ": value not representable");
  }
}

}  // namespace

XiCoordinate xi_of_z(Complex z) {
  z = upper_side(z);
  if (std::abs(z - 1.0) < 1e-14 || std::abs(z + 1.0) < 1e-14) {
    throw std::domain_error("xi_of_z: z = +-1 is a branch point");
  }
  return {std::log(z + sqrt_z2m1(z)), z};
}

Complex legendre_p(int n, Complex z) {
  if (n < 0) {
    throw std::invalid_argument("legendre_p: negative degree");
  }
  if (n == 0) {
    return 1.0;
  }
  Complex prev = 1.0;
  Complex cur = z;
  for (int k = 1; k < n; ++k) {
    const Complex next = ((2.0 * k + 1.0) * z * cur - static_cast<double>(k) * prev) /
                         static_cast<double>(k + 1);
    prev = cur;
    cur = next;
  }
  check_finite(cur, "legendre_p");
  return cur;
}

std::pair<double, double> legendre_p_pair(int n, double x) {
  if (n < 0) {
    throw std::invalid_argument("legendre_p: negative degree");
  }
  if (n == 0) {
    return {1.0, 0.0};
  }
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

double legendre_p(int n, double x) { return legendre_p_pair(n, x).first; }

Complex legendre_p_deriv(int n, Complex z) {
  if (n == 0) {
    return 0.0;
  }
  const double endpoint = 0.5 * n * (n + 1.0);
  if (z == Complex(1.0)) {
    return endpoint;
  }
  if (z == Complex(-1.0)) {
    return (n % 2 == 1) ? endpoint : -endpoint;
  }
  const Complex pn = legendre_p(n, z);
  const Complex pm = legendre_p(n - 1, z);
  return static_cast<double>(n) * (z * pn - pm) / (z * z - 1.0);
}

double legendre_p_deriv(int n, double x) {
  if (n == 0) {
    return 0.0;
  }
  const double endpoint = 0.5 * n * (n + 1.0);
  if (x == 1.0) {
    return endpoint;
  }
  if (x == -1.0) {
    return (n % 2 == 1) ? endpoint : -endpoint;
  }
  const auto [pn, pm] = legendre_p_pair(n, x);
  return n * (pm - x * pn) / (1.0 - x * x);
}

Complex legendre_q(int n, Complex z) {
  if (n < 0) {
    throw std::invalid_argument("legendre_q: negative degree");
  }
  if (std::abs(z.imag()) < 1e-12 && std::abs(z.real()) <= 1.0 + 1e-12) {
    throw std::domain_error("legendre_q: z lies on the cut [-1, 1]");
  }
  const Complex q0 = 0.5 * std::log((z + 1.0) / (z - 1.0));
  if (n == 0) {
    return q0;
  }

  // Each backward step damps the seed error by |w|^{-2}, w = z + sqrt(z^2-1).
  const Complex w = z + sqrt_z2m1(z);
  const double log_w = std::log(std::abs(w));
  constexpr double kMaxExtraTerms = 2.0e6;
  const double extra = std::ceil(19.0 / log_w);

  if (extra > kMaxExtraTerms) {
    Complex prev = q0;
    Complex cur = z * q0 - 1.0;
    for (int k = 1; k < n; ++k) {
      const Complex next = ((2.0 * k + 1.0) * z * cur - static_cast<double>(k) * prev) /
                           static_cast<double>(k + 1);
      prev = cur;
      cur = next;
    }
    return cur;
  }

  // r_k = Q_k / Q_{k-1} = k / ((2k+1) z - (k+1) r_{k+1}), seeded with 1/w.
  const long top = n + static_cast<long>(extra);
  Complex r = 1.0 / w;
  for (long k = top; k > n; --k) {
    r = static_cast<double>(k) / ((2.0 * k + 1.0) * z - static_cast<double>(k + 1) * r);
  }
  Complex q = 1.0;
  for (long k = n; k >= 1; --k) {
    r = static_cast<double>(k) / ((2.0 * k + 1.0) * z - static_cast<double>(k + 1) * r);
    q *= r;
  }
  return q0 * q;
}

Complex p_asymptotic(int n, const XiCoordinate& xi, const AsymptoticDomain& dom) {
  const Complex sh = std::sinh(xi.xi);
  if (std::abs(sh) < dom.eps) {
    throw OutsideValidityDomain("p_asymptotic: |sinh xi| below eps");
  }
  const double h = n + 0.5;
  const Complex e = h * xi.xi;
  // |cosh(e)| >= L/n, evaluated without overflow for large Re(e).
  const double abs_cosh = std::abs(e.real()) > 30.0
                              ? std::numeric_limits<double>::infinity()
                              : std::abs(std::cosh(e));
  if (abs_cosh < dom.L / n) {
    throw OutsideValidityDomain("p_asymptotic: |cosh((n+1/2) xi)| below L/n");
  }

  const Complex coth = std::cosh(xi.xi) / sh;
  const Complex a = 1.0 - 1.0 / (4.0 * n) + coth / (8.0 * n);
  const Complex c = 1.0 - 1.0 / (4.0 * n) - coth / (8.0 * n);
  const Complex phase = kI * (kPi / 4.0);
  // sqrt(i / (2 n pi sinh xi)) taken as e^{i pi/4} (2 n pi sinh xi)^{-1/2}. The
  // principal root jumps only on z < -1, where xi jumps by 2 pi i and flips
  // both exponentials, so the product stays continuous off the cut.
  const Complex log_pref = phase - 0.5 * std::log(2.0 * n * kPi * sh);
  // Factor out the dominant exponential and work with logarithms so the
  // magnitude only materializes at the end.
  const Complex dominant = e.real() >= 0.0 ? e - phase : -e + phase;
  const Complex ratio = e.real() >= 0.0 ? c * std::exp(-2.0 * (e - phase)) + a
                                        : a * std::exp(2.0 * (e - phase)) + c;
  const Complex log_value = log_pref + dominant + std::log(ratio);
  if (log_value.real() > 709.0) {
    throw std::overflow_error("p_asymptotic: value not representable");
  }
  return std::exp(log_value);
}

Complex q_asymptotic(int n, const XiCoordinate& xi, const AsymptoticDomain& dom) {
  const Complex sh = std::sinh(xi.xi);
  if (std::abs(sh) < dom.eps) {
    throw OutsideValidityDomain("q_asymptotic: |sinh xi| below eps");
  }
  // sqrt(pi / (2 (n+1) i sinh xi)) e^{i pi/4} = sqrt(pi / (2 (n+1) sinh xi)).
  const Complex log_value =
      0.5 * std::log(kPi / (2.0 * (n + 1.0))) - 0.5 * std::log(sh) - (n + 0.5) * xi.xi;
  return std::exp(log_value);
}

Complex qp_ratio_asymptotic(int n, double b, double y) {
  const double phi = std::acos(b);
  const double psi = (2.0 * n + 1.0) * phi - kPi / 2.0;
  const Complex denom = std::exp(Complex(2.0 * y / std::sin(phi), psi)) + 1.0;
  return -kI * kPi / denom;
}

double bernstein_ratio_bound(int n, double M) { return std::pow(static_cast<double>(n), -2.0 * M); }

Complex bernstein_ellipse_point(int n, double M, double theta) {
  const double rho = 1.0 + M * std::log(static_cast<double>(n)) / n;
  const Complex w = std::polar(rho, theta);
  return 0.5 * (w + 1.0 / w);
}

}  // namespace singquad

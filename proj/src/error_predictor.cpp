#include "singquad/error_predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "graded_quadrature.hpp"
#include "singquad/errors.hpp"
#include "singquad/special_functions.hpp"

namespace singquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfiniteSpan = 40.0;  // in units of sin(phi)
constexpr double kRefineTolerance = 1e-3;

double checked(const detail::GradedResult& r, const char* what) {
  const double floor = 1e-12 * r.l1;
  if (std::abs(r.value - r.coarse) > kRefineTolerance * std::max(std::abs(r.value), floor)) {
    throw ConvergenceError(fmt::format("{}: panel refinement changed the integral from {} to {}",
                                       what, r.coarse, r.value));
  }
  return r.value;
}

// 2 sinh^2(x/2) + 1 + cos(Psi) = cosh x + cos Psi without cancellation.
double kernel_denominator(double x, double one_plus_cos_psi) {
  const double sh = std::sinh(0.5 * x);
  return 2.0 * sh * sh + one_plus_cos_psi;
}

// e^{-x} + cos Psi.
double kernel_even_numerator(double x, double one_plus_cos_psi) {
  return std::expm1(-x) + one_plus_cos_psi;
}

// Re(i^{k+1} (i A + sin Psi) / D), A = e^{-x} + cos Psi.
double reduced_kernel(int k, double x, const Phase& ph) {
  const double d = kernel_denominator(x, ph.one_plus_cos_psi);
  switch (((k % 4) + 4) % 4) {
    case 0: return -kernel_even_numerator(x, ph.one_plus_cos_psi) / d;
    case 1: return -ph.sin_psi / d;
    case 2: return kernel_even_numerator(x, ph.one_plus_cos_psi) / d;
    default: return ph.sin_psi / d;
  }
}

// +-1 with k = 0 -> -1, k = 2 -> +1 (even k only).
double even_sign(int k) { return (k % 4 == 0) ? -1.0 : 1.0; }

const PowerFamily& require_pure_power(const SingularIntegrand& f) {
  const PowerFamily* p = f.as_power();
  if (p == nullptr || f.envelope()) {
    throw std::invalid_argument("expected a pure power family");
  }
  return *p;
}

const PowerLogFamily& require_pure_power_log(const SingularIntegrand& f) {
  const PowerLogFamily* p = f.as_power_log();
  if (p == nullptr || f.envelope()) {
    throw std::invalid_argument("expected a pure power-log family");
  }
  return *p;
}

double graded(const std::function<double(double)>& g, double s, const char* what,
              int order = 32) {
  return checked(detail::integrate_graded(g, 0.5 * s, kInfiniteSpan * s, order), what);
}

struct LogBracket {
  double log_coeff;  // 2 sin(beta pi/2)
  double constant;   // pi sin((beta+1) pi/2)
};

LogBracket log_bracket(double beta) {
  return {2.0 * std::sin(beta * kPi / 2.0), kPi * std::sin((beta + 1.0) * kPi / 2.0)};
}

// \int y^t log(y)^p K_c(y) dy with K_{+1} = 2/(e^x+1), K_{-1} = -2/(e^x-1).
double envelope_moment(double t, double s, double c, bool with_log) {
  auto g = [=](double y) {
    if (y <= 0.0) {
      return 0.0;
    }
    const double x = 2.0 * y / s;
    const double kern = c > 0.0 ? 2.0 / (std::exp(x) + 1.0) : -2.0 / std::expm1(x);
    const double w = std::pow(y, t) * kern;
    return with_log ? w * std::log(y) : w;
  };
  return graded(g, s, "log envelope");
}

}  // namespace

CoefficientBounds LogAffineEnvelope::at(int n) const {
  const double ln = std::log(static_cast<double>(n));
  const double plus = slope_at_plus_one * ln + intercept_at_plus_one;
  const double minus = slope_at_minus_one * ln + intercept_at_minus_one;
  return {std::min(plus, minus), std::max(plus, minus), true};
}

double leading_term(const SingularIntegrand& f, int n, const PredictorConfig& cfg) {
  if (n < 1) {
    throw std::invalid_argument("n must be positive");
  }
  if (cfg.panel_order < 2) {
    throw std::invalid_argument("panel_order must be at least 2");
  }
  const Phase ph = phase(f, n);
  const double s = std::sin(ph.phi);
  auto g = [&](double y) {
    const double x = 2.0 * y / s;
    const double d = kernel_denominator(x, ph.one_plus_cos_psi);
    const Complex kern(ph.sin_psi / d, kernel_even_numerator(x, ph.one_plus_cos_psi) / d);
    return (jump(f, y, n) * kern).real();
  };
  const bool infinite = cfg.extend_to_infinity && f.as_general() == nullptr;
  const double y_max = infinite ? kInfiniteSpan * s : cfg.M * std::log(static_cast<double>(n));
  const auto r = detail::integrate_graded(g, 0.5 * s, y_max, cfg.panel_order);
  return checked(r, "leading term") / n;
}

double power_case_leading(const SingularIntegrand& f, int n) {
  const PowerFamily& p = require_pure_power(f);
  if (n < 1) {
    throw std::invalid_argument("n must be positive");
  }
  const Phase ph = phase(f, n);
  const double s = std::sin(ph.phi);
  const double t = p.k + p.alpha;
  auto g = [&](double y) {
    return y > 0.0 ? std::pow(y, t) * reduced_kernel(p.k, 2.0 * y / s, ph) : 0.0;
  };
  const double pref = 2.0 * std::sin(p.alpha * kPi / 2.0) / std::pow(n, t + 1.0);
  return pref * graded(g, s, "power leading term");
}

CoefficientBounds coefficient_bounds(const SingularIntegrand& f) {
  const PowerFamily& p = require_pure_power(f);
  const double t = p.k + p.alpha;
  const double s = std::sin(f.phi());
  const double u = std::sin(p.alpha * kPi / 2.0) * std::pow(s, t + 1.0) * gamma_fn(t + 1.0) *
                   zeta_fn(t + 1.0) / std::pow(2.0, t - 1.0);
  if (p.k % 2 == 0) {
    const double sigma = even_sign(p.k);
    const double at_plus = sigma * (1.0 - std::pow(2.0, -t)) * u;
    const double at_minus = -sigma * u;
    return {std::min(at_plus, at_minus), std::max(at_plus, at_minus), true};
  }
  const double bound = (1.0 - std::pow(2.0, -(t + 1.0))) * std::abs(u);
  return {-bound, bound, false};
}

double log_case_leading(const SingularIntegrand& f, int n) {
  const PowerLogFamily& p = require_pure_power_log(f);
  if (n < 1) {
    throw std::invalid_argument("n must be positive");
  }
  const Phase ph = phase(f, n);
  const double s = std::sin(ph.phi);
  const double t = p.k + p.beta;
  const LogBracket br = log_bracket(p.beta);
  const double ln = std::log(static_cast<double>(n));
  auto g = [&](double y) {
    if (y <= 0.0) {
      return 0.0;
    }
    const double bracket = br.log_coeff * (std::log(y) - ln) + br.constant;
    return std::pow(y, t) * bracket * reduced_kernel(p.k, 2.0 * y / s, ph);
  };
  return graded(g, s, "power-log leading term") / std::pow(n, t + 1.0);
}

LogAffineEnvelope log_case_envelope(const SingularIntegrand& f) {
  const PowerLogFamily& p = require_pure_power_log(f);
  if (p.k % 2 != 0) {
    throw std::invalid_argument("log-affine envelope needs even k");
  }
  const double s = std::sin(f.phi());
  const double t = p.k + p.beta;
  const double sigma = even_sign(p.k);
  const LogBracket br = log_bracket(p.beta);
  LogAffineEnvelope env;
  for (const double c : {1.0, -1.0}) {
    const double i0 = sigma * envelope_moment(t, s, c, false);
    const double i1 = sigma * envelope_moment(t, s, c, true);
    const double slope = -br.log_coeff * i0;
    const double intercept = br.log_coeff * i1 + br.constant * i0;
    if (c > 0.0) {
      env.slope_at_plus_one = slope;
      env.intercept_at_plus_one = intercept;
    } else {
      env.slope_at_minus_one = slope;
      env.intercept_at_minus_one = intercept;
    }
  }
  return env;
}

CoefficientBounds log_case_bounds(const SingularIntegrand& f, int n) {
  const PowerLogFamily& p = require_pure_power_log(f);
  if (p.k % 2 == 0) {
    return log_case_envelope(f).at(n);
  }
  const double s = std::sin(f.phi());
  const double t = p.k + p.beta;
  const LogBracket br = log_bracket(p.beta);
  const double ln = std::log(static_cast<double>(n));
  auto g = [&](double y) {
    if (y <= 0.0) {
      return 0.0;
    }
    const double bracket = br.log_coeff * (std::log(y) - ln) + br.constant;
    return std::pow(y, t) * std::abs(bracket) / std::sinh(2.0 * y / s);
  };
  const double bound = graded(g, s, "power-log bound");
  return {-bound, bound, false};
}

double psi0_defining_integral(int k, double alpha, double cos_psi0) {
  if (!(cos_psi0 > -1.0 && cos_psi0 <= 1.0)) {
    throw std::domain_error("cos(Psi_0) must lie in (-1, 1]");
  }
  const double t = k + alpha;
  const double one_plus_c = 1.0 + cos_psi0;
  auto g = [=](double x) {
    if (x <= 0.0) {
      return 0.0;
    }
    return std::pow(x, t) * kernel_even_numerator(x, one_plus_c) /
           kernel_denominator(x, one_plus_c);
  };
  return checked(detail::integrate_graded(g, 1.0, 80.0 + 2.0 * t, 32), "Psi_0 integral");
}

double psi0_solve(int k, double alpha) {
  if (k % 2 != 0) {
    throw std::invalid_argument("Psi_0 is defined for k = 0, 2 (mod 4)");
  }
  double lo = -1.0 + 1e-9;
  double hi = 1.0;
  const double f_lo = psi0_defining_integral(k, alpha, lo);
  const double f_hi = psi0_defining_integral(k, alpha, hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw ConvergenceError(
        fmt::format("Psi_0 integral does not change sign: F(lo) = {}, F(1) = {}", f_lo, f_hi));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = psi0_defining_integral(k, alpha, mid);
    if (std::abs(v) <= 1e-10 || hi - lo < 1e-16) {
      return mid;
    }
    (v < 0.0 ? lo : hi) = mid;
  }
  throw ConvergenceError("Psi_0 bisection did not converge");
}

double predicted_coefficient(const SingularIntegrand& f, int n, const PredictorConfig& cfg) {
  const double scale = std::pow(static_cast<double>(n), predicted_order(f).order_exponent);
  if (f.is_pure() && f.as_power() != nullptr) {
    return scale * power_case_leading(f, n);
  }
  if (f.is_pure() && f.as_power_log() != nullptr) {
    return scale * log_case_leading(f, n);
  }
  return scale * leading_term(f, n, cfg);
}

std::vector<int> recommend_n(const SingularIntegrand& f, int n_min, int n_max,
                             const PredictorConfig& cfg) {
  if (n_min < 1 || n_max < n_min) {
    throw std::invalid_argument("empty n range");
  }
  std::vector<int> ns(static_cast<std::size_t>(n_max - n_min + 1));
  std::iota(ns.begin(), ns.end(), n_min);
  std::vector<double> size(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    size[i] = std::abs(predicted_coefficient(f, ns[i], cfg));
  }
  std::vector<std::size_t> idx(ns.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return size[a] < size[b]; });
  std::vector<int> out;
  out.reserve(idx.size());
  for (const std::size_t i : idx) {
    out.push_back(ns[i]);
  }
  return out;
}

std::vector<int> crude_recommendation(const SingularIntegrand& f, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw std::invalid_argument("empty n range");
  }
  const bool even = holder_class(f).k % 2 == 0;
  std::vector<std::pair<double, int>> keyed;
  for (int n = n_min; n <= n_max; ++n) {
    const double c = std::cos((2.0 * n + 1.0) * f.phi());
    keyed.emplace_back(even ? 1.0 - std::abs(c) : std::abs(c), n);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> out;
  out.reserve(keyed.size());
  for (const auto& kv : keyed) {
    out.push_back(kv.second);
  }
  return out;
}

OrderInfo predicted_order(const SingularIntegrand& f) {
  const HolderClass hc = holder_class(f);
  OrderInfo info;
  if (const auto* p = f.as_power()) {
    info.order_exponent = p->k + p->alpha + 1.0;
  } else if (const auto* p = f.as_power_log()) {
    info.order_exponent = p->k + p->beta + 1.0;
    info.log_factor = p->beta != 0.0;
  } else {
    info.order_exponent = hc.k + hc.alpha + 1.0;
  }
  const double sum = hc.k + hc.alpha;
  const bool critical = !hc.open && std::abs(sum - 1.0) < 1e-12;
  if (critical) {
    info.regime = Regime::critical;
    info.regime_exponent = sum + 2.0;
    info.regime_log = true;
  } else if (sum < 1.0 || (hc.open && sum <= 1.0 + 1e-12)) {
    info.regime = Regime::below_one;
    info.regime_exponent = 2.0 * sum + 1.0;
  } else {
    info.regime = Regime::above_one;
    info.regime_exponent = sum + 2.0;
  }
  return info;
}

ErrorPrediction predict(const SingularIntegrand& f, int n, const PredictorConfig& cfg) {
  ErrorPrediction out;
  out.leading = leading_term(f, n, cfg);
  out.order = predicted_order(f);
  if (f.is_pure() && f.as_power() != nullptr) {
    out.coefficient_bounds = coefficient_bounds(f);
  } else if (f.is_pure() && f.as_power_log() != nullptr) {
    out.coefficient_bounds = log_case_bounds(f, n);
  }
  return out;
}

}  // namespace singquad

#include "singquad/reference_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "graded_quadrature.hpp"
#include "singquad/errors.hpp"

namespace singquad {

namespace {

constexpr int kPanelOrder = 15;
constexpr int kMaxDepth = 60;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double parity(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

// \int_0^T t^m e^{-t^2} dt for integer m >= 0.
double gaussian_moment(int m, double T) {
  const double e = std::exp(-T * T);
  if (m == 0) {
    return 0.5 * std::sqrt(std::numbers::pi) * std::erf(T);
  }
  if (m == 1) {
    return 0.5 * (1.0 - e);
  }
  return -0.5 * std::pow(T, m - 1) * e + 0.5 * (m - 1) * gaussian_moment(m - 2, T);
}

// \int_0^T t^m log t dt.
double log_moment(double m, double T) {
  const double p = m + 1.0;
  return std::pow(T, p) * (std::log(T) / p - 1.0 / (p * p));
}

struct Accumulated {
  CompensatedSum value;
  double error = 0.0;
};

void integrate_side(const std::function<double(double)>& g, double length, Accumulated& acc) {
  struct Panel {
    double a;
    double b;
    double whole;
    int depth;
  };
  std::vector<Panel> stack{{0.0, length, detail::gauss_panel(g, 0.0, length, kPanelOrder), 0}};
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = detail::gauss_panel(g, p.a, mid, kPanelOrder);
    const double right = detail::gauss_panel(g, mid, p.b, kPanelOrder);
    const double diff = std::abs(left + right - p.whole);
    if (diff <= 1e-15 * (1.0 + std::abs(left + right))) {
      acc.value.add(left + right);
      acc.error += diff;
      continue;
    }
    if (p.depth + 1 >= kMaxDepth) {
      throw ConvergenceError("split adaptive integration exceeded 60 bisection levels");
    }
    stack.push_back({p.a, mid, left, p.depth + 1});
    stack.push_back({mid, p.b, right, p.depth + 1});
  }
}

}  // namespace

std::optional<ExactIntegral> closed_form_integral(const SingularIntegrand& f) {
  const double b = f.b();
  const double right = 1.0 - b;
  const double left = 1.0 + b;
  auto done = [](double a, double c, double value) {
    return ExactIntegral{value, ExactIntegral::Method::closed_form,
                         8.0 * kEps * (std::abs(a) + std::abs(c))};
  };

  if (const auto* p = f.as_power()) {
    const double s = p->k + p->alpha;
    if (!f.envelope()) {
      const double a = std::pow(right, s + 1.0) / (s + 1.0);
      const double c = parity(p->k) * std::pow(left, s + 1.0) / (s + 1.0);
      return done(a, c, a + c);
    }
    const double rounded = std::round(s);
    if (f.envelope()->kind == Envelope::Kind::gaussian && std::abs(s - rounded) < 1e-14) {
      const int m = static_cast<int>(rounded);
      const double a = gaussian_moment(m, right);
      const double c = parity(p->k) * gaussian_moment(m, left);
      return done(a, c, a + c);
    }
    return std::nullopt;
  }
  if (const auto* p = f.as_power_log()) {
    if (f.envelope()) {
      return std::nullopt;
    }
    const double m = p->k + p->beta;
    const double a = log_moment(m, right);
    const double c = parity(p->k) * log_moment(m, left);
    return done(a, c, a + c);
  }
  return std::nullopt;
}

ExactIntegral split_adaptive_integral(const SingularIntegrand& f) {
  const double b = f.b();
  Accumulated acc;
  integrate_side([&](double t) { return evaluate_real(f, b + t); }, 1.0 - b, acc);
  integrate_side([&](double t) { return evaluate_real(f, b - t); }, 1.0 + b, acc);
  return {acc.value.value(), ExactIntegral::Method::split_adaptive, acc.error};
}

ExactIntegral exact_integral(const SingularIntegrand& f) {
  if (auto closed = closed_form_integral(f)) {
    return *closed;
  }
  return split_adaptive_integral(f);
}

}  // namespace singquad

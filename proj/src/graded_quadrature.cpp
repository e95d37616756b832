#include "graded_quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace singquad::detail {

const QuadratureRule& cached_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) {
    slot = std::make_unique<QuadratureRule>(order);
  }
  return *slot;
}

double gauss_panel(const std::function<double(double)>& g, double a, double b, int order) {
  const QuadratureRule& rule = cached_rule(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto x = rule.nodes();
  const auto w = rule.weights();
  CompensatedSum sum;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum.add(w[j] * g(mid + half * x[j]));
  }
  return half * sum.value();
}

namespace {

struct PanelValues {
  double coarse;
  double fine;
  double l1;
};

PanelValues panel_pair(const std::function<double(double)>& g, double a, double b, int order) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(g, a, mid, order);
  const double right = gauss_panel(g, mid, b, order);
  return {gauss_panel(g, a, b, order), left + right, std::abs(left) + std::abs(right)};
}

}  // namespace

GradedResult integrate_graded(const std::function<double(double)>& g, double scale,
                              double y_max, int order) {
  GradedResult out;
  if (!(y_max > 0.0)) {
    return out;
  }
  CompensatedSum coarse;
  CompensatedSum fine;
  CompensatedSum l1;
  const double top = std::min(scale, y_max);

  const int uniform = y_max > top ? static_cast<int>(std::ceil((y_max - top) / scale)) : 0;
  for (int i = uniform - 1; i >= 0; --i) {
    const double a = top + i * (y_max - top) / uniform;
    const double b = top + (i + 1) * (y_max - top) / uniform;
    const PanelValues p = panel_pair(g, a, b, order);
    coarse.add(p.coarse);
    fine.add(p.fine);
    l1.add(p.l1);
  }

  double hi = top;
  int quiet = 0;
  while (hi > 1e-300) {
    const double lo = 0.5 * hi;
    const PanelValues p = panel_pair(g, lo, hi, order);
    coarse.add(p.coarse);
    fine.add(p.fine);
    l1.add(p.l1);
    const double scale_total = std::max(std::abs(fine.value()), l1.value());
    quiet = (std::abs(p.fine) <= 1e-18 * scale_total) ? quiet + 1 : 0;
    if (quiet >= 3) {
      break;
    }
    hi = lo;
  }
  out.value = fine.value();
  out.coarse = coarse.value();
  out.l1 = l1.value();
  return out;
}

}  // namespace singquad::detail

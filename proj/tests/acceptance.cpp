// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "singquad/error_predictor.hpp"
#include "singquad/experiments.hpp"
#include "singquad/gauss_rule.hpp"
#include "singquad/legendre.hpp"
#include "singquad/reference_oracle.hpp"

using namespace singquad;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

// Criterion 3 is implemented as stated and is known to fail; see README.
const std::set<int> kExpectedFailures = {3};

std::vector<ExperimentRecord> sweep(const SingularIntegrand& f, int n_min = 10, int n_max = 600) {
  SweepConfig cfg;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  return run_sweep(f, cfg);
}

Outcome quadrature_correctness() {
  double worst_mono = 0.0;
  double worst_sum = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const QuadratureRule r(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      worst_mono = std::max(
          worst_mono, std::abs(remainder(r, [d](double x) { return std::pow(x, d); }, exact)));
    }
    CompensatedSum s;
    for (const double w : r.weights()) {
      s.add(w);
    }
    worst_sum = std::max(worst_sum, std::abs(s.value() - 2.0) / (1e-13 * n));
  }
  return {worst_mono <= 1e-12 && worst_sum <= 1.0,
          fmt::format("max monomial error {:.2e}; max |sum w - 2| / (1e-13 n) = {:.3f}", worst_mono,
                      worst_sum)};
}

// Fixed 20-point sample of the validity set: phi spread over [pi/6, 5pi/6]
// (|sinh xi| >= 0.5), each moved to the nearest point where the Hilb
// leading factor cos((n+1/2) phi - pi/4) equals 1/n.
double asymptotic_sample_error(int n) {
  const double h = n + 0.5;
  const double a = std::acos(1.0 / n);
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double t = kPi / 6 + j * (2 * kPi / 3) / 19;
    const double m = std::floor((h * t - kPi / 4 - a) / (2 * kPi));
    double phi = (a + 2 * kPi * m + kPi / 4) / h;
    if (phi < kPi / 6) {
      phi += 2 * kPi / h;
    }
    const double z = std::cos(phi);
    const Complex pa = p_asymptotic(n, xi_of_z(z));
    worst = std::max(worst, std::abs(pa / legendre_p(n, z) - 1.0));
  }
  return worst;
}

Outcome legendre_asymptotics() {
  std::vector<double> errs;
  for (const int n : {50, 100, 200, 400}) {
    errs.push_back(asymptotic_sample_error(n));
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double r = errs[i] / errs[i - 1];
    ok = ok && r >= 0.3 && r <= 0.8;
    ratios += fmt::format("{}{:.3f}", i == 1 ? "" : ", ", r);
  }
  double worst_w = 0.0;
  for (const int n : {5, 20, 100}) {
    for (const Complex z : {Complex(2.0, 0.0), Complex(0.4, 0.1), Complex(0.4, 0.001)}) {
      const Complex w = static_cast<double>(n) * (legendre_p(n, z) * legendre_q(n - 1, z) -
                                                  legendre_p(n - 1, z) * legendre_q(n, z));
      worst_w = std::max(worst_w, std::abs(w - 1.0));
    }
  }
  ok = ok && worst_w <= 1e-9;
  return {ok, fmt::format("error ratios on doubling n: {}; Wronskian deviation {:.2e}", ratios,
                          worst_w)};
}

// max over the y-grid of |exact ratio - approximation| / envelope(y).
double ratio_constant(int n, double b, const std::function<double(int, double)>& envelope) {
  double worst = 0.0;
  const double lo = 1.0 / n;
  const double hi = 3.0 * std::log(static_cast<double>(n));
  for (int i = 0; i <= 200; ++i) {
    const double y = lo * std::pow(hi / lo, i / 200.0);
    const Complex z(b, y / n);
    const Complex exact = legendre_q(n, z) / legendre_p(n, z);
    const double dev = std::abs(exact - qp_ratio_asymptotic(n, b, y));
    worst = std::max(worst, dev / envelope(n, y));
  }
  return worst;
}

Outcome ratio_envelope() {
  const double b = 0.4;
  const double s = std::sin(std::acos(b));
  auto stated = [s](int n, double y) {
    const double e = std::expm1(2.0 * y / s);
    return 1.0 / (n * e * e);
  };
  const double c = ratio_constant(100, b, stated);
  bool ok = true;
  std::string at;
  for (const int n : {200, 400}) {
    const double cn = ratio_constant(n, b, stated);
    ok = ok && cn <= 2.0 * c;
    at += fmt::format(", n={}: {:.3e}", n, cn);
  }
  auto observed = [s](int n, double y) {
    const double x = 2.0 * y / s;
    const double psi = (2.0 * n + 1.0) * std::acos(0.4) - kPi / 2;
    return (1.0 + y * y) * std::exp(x) / (n * std::norm(std::exp(Complex(x, psi)) + 1.0));
  };
  double lo = 1e300, hi = 0.0;
  for (const int n : {100, 200, 400}) {
    const double cn = ratio_constant(n, b, observed);
    lo = std::min(lo, cn);
    hi = std::max(hi, cn);
  }
  return {ok, fmt::format("stated envelope: C(100) = {:.3e}{}; (1+y^2)e^x/(n|e^(x+iPsi)+1|^2) "
                          "envelope holds with C in [{:.3f}, {:.3f}]",
                          c, at, lo, hi)};
}

Outcome example1() {
  bool ok = true;
  std::string detail;
  for (const double alpha : {0.5, 1.5}) {
    const auto f = example_integrand(1, {.alpha = alpha});
    const auto rec = sweep(f);
    double c = 0.0;
    for (const auto& r : rec) {
      if (r.n >= 100 && r.n <= 200) {
        c = std::max(c, r.abs_error * std::pow(r.n, alpha + 1));
      }
    }
    int over = 0;
    for (const auto& r : rec) {
      over += r.abs_error > 1.01 * c * std::pow(r.n, -(alpha + 1)) ? 1 : 0;
    }
    const int viol = count_envelope_violations(rec, 0.01);
    const CoefficientBounds bnd = coefficient_bounds(f);
    ok = ok && over == 0 && viol == 0;
    detail += fmt::format("{}alpha={}: c={:.4f}, {} above c n^-{}, bounds [{:.4f}, {:.4f}], {} "
                          "outside",
                          detail.empty() ? "" : "; ", alpha, c, over, alpha + 1, bnd.lower,
                          bnd.upper, viol);
  }
  return {ok, detail};
}

Outcome example2() {
  bool ok = true;
  std::string detail;
  int rounding_excursions = 0;
  for (int k = 0; k <= 3; ++k) {
    const auto f = example_integrand(2, {.k = k});
    const auto rec = sweep(f, 100, 600);
    const CoefficientBounds bnd = coefficient_bounds(f);
    double lo = 1e300, hi = -1e300;
    for (const auto& r : rec) {
      lo = std::min(lo, r.scaled_coeff);
      hi = std::max(hi, r.scaled_coeff);
    }
    bool good;
    if (k % 2 == 0) {
      good = std::abs(hi - bnd.upper) <= 0.02 * std::abs(bnd.upper) &&
             std::abs(lo - bnd.lower) <= 0.02 * std::abs(bnd.lower);
    } else {
      // Past n ~ 400 the k = 3 remainder is near 1e-13 and the rounding in
      // the rule, scaled by n^{k+alpha+1}, exceeds the gap to the bound. Only
      // an excursion beyond that rounding level counts as a violation.
      const double t = f.as_power()->k + f.as_power()->alpha;
      int outside = 0;
      for (const auto& r : rec) {
        const QuadratureRule rule(r.n);
        const double l1 = apply_rule(rule, [&](double x) { return std::abs(evaluate_real(f, x)); });
        const double noise = 8.0 * std::numeric_limits<double>::epsilon() * l1 * std::pow(r.n, t + 1);
        if (r.scaled_coeff - noise >= bnd.upper || r.scaled_coeff + noise <= bnd.lower) {
          ++outside;
        } else if (r.scaled_coeff >= bnd.upper || r.scaled_coeff <= bnd.lower) {
          ++rounding_excursions;
        }
      }
      good = outside == 0;
    }
    ok = ok && good;
    detail += fmt::format("{}k={}: [{:.4f}, {:.4f}] vs [{:.4f}, {:.4f}]", k == 0 ? "" : "; ", k, lo,
                          hi, bnd.lower, bnd.upper);
  }
  detail += fmt::format("; {} odd-k records past the bound by less than their rounding level",
                        rounding_excursions);
  return {ok, detail};
}

Outcome example3() {
  const auto f = example_integrand(3);
  const auto rec = sweep(f);
  std::map<long, std::vector<ExperimentRecord>> classes;
  for (const auto& r : rec) {
    classes[std::lround(r.cos_phase * 1e6)].push_back(r);
  }
  double range = 0.0;
  for (const auto& r : rec) {
    range = std::max(range, std::abs(r.scaled_coeff));
  }
  int curves_broken = 0;
  for (std::size_t i = 0; i + 6 < rec.size(); ++i) {
    if (rec[i].n >= 100 && std::abs(rec[i + 6].scaled_coeff - rec[i].scaled_coeff) > 0.01 * range) {
      ++curves_broken;
    }
  }
  bool ok = classes.size() <= 4 && curves_broken == 0;
  std::string detail = fmt::format("{} phase classes, {} breaks in the n mod 6 curves", classes.size(),
                                   curves_broken);
  for (const auto& [key, members] : classes) {
    const double slope = fit_envelope_slope(members, 10);
    // The predicted leading coefficient vanishes when cos((2n+1) phi) = 0.
    const bool fast = key == 0;
    ok = ok && (fast ? slope <= -3.4 : std::abs(slope + 2.5) <= 0.5);
    detail += fmt::format("; cos={:.4f}: slope {:.3f}", key * 1e-6, slope);
  }
  return {ok, detail};
}

Outcome example4() {
  const auto f1 = example_integrand(4, {.variant = 1});
  const auto f2 = example_integrand(4, {.variant = 2});
  const LogAffineEnvelope env = log_case_envelope(f1);
  const double b2 = log_case_bounds(f2, 100).upper;
  const bool constants = std::abs(env.slope_at_plus_one - 0.691) <= 0.01 &&
                         std::abs(env.intercept_at_plus_one - 0.162) <= 0.01 &&
                         std::abs(env.slope_at_minus_one + 1.382) <= 0.01 &&
                         std::abs(env.intercept_at_minus_one + 1.282) <= 0.01 &&
                         std::abs(b2 - 1.628) <= 0.01;
  double reach_hi = 0.0, reach_lo = 0.0;
  for (const auto& r : sweep(f1, 100, 600)) {
    const CoefficientBounds c = env.at(r.n);
    reach_hi = std::max(reach_hi, r.scaled_coeff / c.upper);
    reach_lo = std::max(reach_lo, r.scaled_coeff / c.lower);
  }
  const bool attained = std::abs(reach_hi - 1.0) <= 0.03 && std::abs(reach_lo - 1.0) <= 0.03;
  double peak = 0.0;
  for (const auto& r : sweep(f2)) {
    peak = std::max(peak, std::abs(r.scaled_coeff));
  }
  return {constants && attained && peak < b2,
          fmt::format("envelopes {:.4f} log n + {:.4f}, {:.4f} log n + {:.4f}; f2 bound {:.4f}; "
                      "f1 reaches {:.4f} of upper, {:.4f} of lower; max |n^2 R_n| for f2 = {:.4f}",
                      env.slope_at_plus_one, env.intercept_at_plus_one, env.slope_at_minus_one,
                      env.intercept_at_minus_one, b2, reach_hi, reach_lo, peak)};
}

Outcome example5() {
  const auto rec = sweep(example_integrand(5), 50, 600);
  const double raw = fit_envelope_slope(rec, 20, ErrorKind::raw);
  const double corrected = fit_envelope_slope(rec, 20, ErrorKind::corrected);
  return {raw >= -2.3 && raw <= -1.8 && corrected <= -2.7,
          fmt::format("raw slope {:.3f}, corrected slope {:.3f}", raw, corrected)};
}

Outcome predictor_consistency() {
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    for (const double alpha : {0.25, 0.5, 0.75, 1.0}) {
      for (const double b : {0.4, std::cos(kPi / 6)}) {
        for (const int n : {50, 150, 400}) {
          const auto f = SingularIntegrand::power(b, k, alpha);
          const double general = leading_term(f, n);
          if (std::abs(general) > 1e-14) {
            worst = std::max(worst, std::abs(power_case_leading(f, n) - general) / std::abs(general));
          }
        }
      }
    }
  }
  double residual = 0.0;
  for (const auto [k, alpha] : {std::pair{0, 0.5}, std::pair{0, 1.0}, std::pair{2, -0.5},
                                std::pair{2, 1.0}}) {
    residual = std::max(residual, std::abs(psi0_defining_integral(k, alpha, psi0_solve(k, alpha))));
  }

  const auto f = example_integrand(1);
  const auto rec = sweep(f, 99, 601);
  auto err = [&](int n) { return rec[static_cast<std::size_t>(n - 99)].abs_error; };
  int windows = 0, wins = 0;
  for (int lo = 100; lo + 9 <= 600; lo += 10) {
    const int best = recommend_n(f, lo, lo + 9).front();
    ++windows;
    wins += err(best) < err(best - 1) && err(best) < err(best + 1) ? 1 : 0;
  }
  const double frac = static_cast<double>(wins) / windows;
  return {worst <= 1e-8 && residual <= 1e-10 && frac >= 0.7,
          fmt::format("max relative disagreement {:.2e}; Psi_0 residual {:.2e}; recommended n "
                      "beats both neighbours in {}/{} windows",
                      worst, residual, wins, windows)};
}

Outcome oracle_integrity() {
  double worst = 0.0;
  int count = 0;
  for (const double b : {-0.7, 0.0, 0.4, std::cos(kPi / 6)}) {
    std::vector<SingularIntegrand> cases;
    for (int k = 0; k <= 3; ++k) {
      for (const double alpha : {0.25, 0.5, 1.0}) {
        cases.push_back(SingularIntegrand::power(b, k, alpha));
      }
      if (k >= 1) {
        cases.push_back(SingularIntegrand::power(b, k, -0.5));
        cases.push_back(SingularIntegrand::power_log(b, k, 0.0));
      }
      cases.push_back(SingularIntegrand::power_log(b, k, 0.5));
      cases.push_back(SingularIntegrand::power_log(b, k, 1.0));
      cases.push_back(SingularIntegrand::power(b, k, 1.0, Envelope::gaussian(b)));
    }
    for (const auto& f : cases) {
      const auto closed = closed_form_integral(f);
      if (!closed) {
        continue;
      }
      ++count;
      worst = std::max(worst, std::abs(closed->value - split_adaptive_integral(f).value));
    }
  }
  return {worst <= 1e-12, fmt::format("{} integrands, max difference {:.2e}", count, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"quadrature correctness", quadrature_correctness},
      {"Legendre asymptotics", legendre_asymptotics},
      {"Q/P ratio envelope", ratio_envelope},
      {"Example 1 envelope and bounds", example1},
      {"Example 2 parity behaviour", example2},
      {"Example 3 phase classes", example3},
      {"Example 4 log envelopes", example4},
      {"Example 5 correction", example5},
      {"predictor self-consistency", predictor_consistency},
      {"oracle integrity", oracle_integrity},
  };
  int unexpected = 0;
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool expected_fail = kExpectedFailures.count(id) != 0;
    fmt::print("{} criterion {}: {}: {}{}\n", o.passed ? "PASS" : "FAIL", id, criteria[i].first,
               o.detail, expected_fail && !o.passed ? " [expected failure]" : "");
    passed += o.passed ? 1 : 0;
    if (o.passed == expected_fail) {
      ++unexpected;
    }
  }
  fmt::print("{}/{} criteria pass; {} unexpected result(s)\n", passed, criteria.size(), unexpected);
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>

#include "singquad/corrected_quadrature.hpp"
#include "singquad/experiments.hpp"
#include "singquad/reference_oracle.hpp"

using namespace singquad;

TEST_SUITE("corrected_quadrature") {
  TEST_CASE("polynomial integrand is left unchanged") {
    GeneralJumpFamily poly{[](double x) { return 3 * x * x + x; },
                           [](double, int) { return Complex{}; }, 6, 1.0};
    const auto r = corrected_integral(SingularIntegrand::general(0.1, poly), 12);
    CHECK(r.n == 12);
    CHECK(r.correction == 0.0);
    CHECK(r.corrected == r.raw);
    CHECK(r.raw == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("correction is one addition") {
    const auto f = SingularIntegrand::power(0.4, 0, 0.5);
    const auto r = corrected_integral(f, 137);
    CHECK(r.corrected == r.raw + r.correction);
    CHECK(r.correction == leading_term(f, 137));
    const auto again = corrected_integral(f, QuadratureRule(137));
    CHECK(again.corrected == r.corrected);
  }

  TEST_CASE("correction reduces the error for most n") {
    const SingularIntegrand families[] = {
        SingularIntegrand::power(0.4, 0, 0.5),
        SingularIntegrand::power(0.4, 2, -0.5),
        SingularIntegrand::power(0.4, 1, 1.0),
        SingularIntegrand::power(-0.25, 0, 0.25),
        SingularIntegrand::power_log(0.4, 0, 1.0),
        SingularIntegrand::power_log(0.4, 1, 0.0),
        SingularIntegrand::power(0.4, 0, 1.0, Envelope::gaussian(0.4)),
    };
    for (const auto& f : families) {
      CAPTURE(f.describe());
      const double exact = exact_integral(f).value;
      int better = 0;
      int total = 0;
      for (int n = 50; n <= 400; n += 3) {
        const auto r = corrected_integral(f, n);
        const double raw_err = std::abs(exact - r.raw);
        if (raw_err < 1e-15 * std::abs(exact)) {
          continue;
        }
        ++total;
        better += std::abs(exact - r.corrected) <= raw_err ? 1 : 0;
      }
      CHECK(better >= 0.9 * total);
    }
  }

  TEST_CASE("Example 5 correction accuracy") {
    const auto f = SingularIntegrand::power(0.4, 0, 1.0, Envelope::gaussian(0.4));
    const double exact = exact_integral(f).value;
    // C calibrated as the largest |R_n - leading| n^3 / log n over [100, 600].
    double c = 0.0;
    for (int n = 100; n <= 600; n += 5) {
      const auto r = corrected_integral(f, n);
      c = std::max(c, std::abs(exact - r.corrected) * std::pow(n, 3) / std::log(n));
    }
    CHECK(c < 5.0);
    const auto r = corrected_integral(f, 200);
    CHECK(std::abs(exact - r.corrected) <= c * std::log(200.0) * std::pow(200.0, -3));
  }

  TEST_CASE("envelope slopes improve by at least half an order") {
    for (const auto& f : {example_integrand(1), example_integrand(5), example_integrand(2)}) {
      SweepConfig cfg;
      cfg.n_min = 50;
      cfg.n_max = 600;
      const auto rec = run_sweep(f, cfg);
      const double raw = fit_envelope_slope(rec, 20, ErrorKind::raw);
      const double corrected = fit_envelope_slope(rec, 20, ErrorKind::corrected);
      CAPTURE(f.describe());
      CHECK(corrected <= raw - 0.5);
    }
  }
}

#include "singquad/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace singquad {

double gamma_fn(double s) {
  if (!(s > 0.0)) {
    throw std::domain_error("gamma_fn: argument must be positive");
  }
  return std::tgamma(s);
}

double zeta_fn(double s) {
  if (!(s > 1.0)) {
    throw std::domain_error("zeta_fn: argument must exceed 1");
  }
  constexpr int kCutoff = 20;
  // B_2, B_4, B_6, B_8 divided by (2j)!.
  constexpr std::array<double, 4> kBernoulliOverFactorial = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
  };

  double sum = 0.0;
  for (int k = kCutoff - 1; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -s);
  }
  const double N = kCutoff;
  sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);

  // Rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}.
  double rising = s;
  double power = std::pow(N, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= N * N;
  }
  return sum;
}

}  // namespace singquad

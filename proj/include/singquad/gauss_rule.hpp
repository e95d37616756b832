#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace singquad {

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes are strictly increasing
/// and exactly antisymmetric; weights are positive.
class QuadratureRule {
 public:
  /// Newton iteration on P_n from the guesses cos((4j-1) pi / (4n+2)),
  /// weights 2 / ((1 - x^2) P_n'(x)^2). Only the upper half is iterated;
  /// the lower half is mirrored. Throws std::invalid_argument for n < 1
  /// and ConvergenceError if a node fails to converge in 50 steps.
  explicit QuadratureRule(int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Same as constructing a QuadratureRule; n must lie in [1, 2000].
QuadratureRule compute_rule(int n);

/// Sum of w_j f(x_j) in node order with Neumaier-compensated summation.
/// Throws std::domain_error if f is non-finite at a node.
double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f);

/// R_n[f] = exact - apply_rule(rule, f).
double remainder(const QuadratureRule& rule, const std::function<double(double)>& f,
                 double exact);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace singquad

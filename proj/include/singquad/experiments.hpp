#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "singquad/error_predictor.hpp"
#include "singquad/singularity_model.hpp"

namespace singquad {

struct ExperimentRecord {
  int n = 0;
  /// R_n = exact - quadrature.
  double error = 0.0;
  double abs_error = 0.0;
  /// n^{order} * error, sign kept.
  double scaled_coeff = 0.0;
  /// cos((2n+1) phi).
  double cos_phase = 0.0;
  double predicted = 0.0;
  /// exact - (quadrature + predicted).
  double corrected_error = 0.0;
  std::optional<CoefficientBounds> bounds;
  /// abs_error below 1e-15 |exact|; excluded from slope fits.
  bool at_machine_floor = false;
};

struct SweepConfig {
  std::string spec;
  int n_min = 10;
  int n_max = 600;
  PredictorConfig predictor;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// One record per n in [n_min, n_max], ascending, independent of thread
/// scheduling. Throws std::invalid_argument unless 10 <= n_min < n_max.
std::vector<ExperimentRecord> run_sweep(const SingularIntegrand& f, const SweepConfig& cfg);
std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader =
    "n,error,abs_error,scaled_coeff,cos_phase,predicted,corrected_error,bound_lo,bound_hi";

/// 17 significant digits; missing bounds are written as "nan".
void write_csv(std::ostream& os, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> read_csv(std::istream& is);

enum class ErrorKind { raw, corrected };

/// Least-squares slope of log(max error per window) against log(median n
/// per window), over consecutive windows of `window` records that are not
/// at the machine floor. Needs at least 5 windows; throws
/// std::invalid_argument otherwise and std::domain_error when every error
/// is zero.
double fit_envelope_slope(std::span<const ExperimentRecord> records, int window,
                          ErrorKind kind = ErrorKind::raw);

/// Records with n >= 100 whose scaled coefficient leaves its bounds by more
/// than `rel_tol` of the bound width.
int count_envelope_violations(std::span<const ExperimentRecord> records, double rel_tol = 0.01);

/// Human-readable summary: order and regime, fitted slopes, bound
/// constants, envelope violations and recommended sizes.
std::string report(const SingularIntegrand& f, std::span<const ExperimentRecord> records,
                   const SweepConfig& cfg);

/// Integrands of the five worked examples.
struct ExampleOptions {
  double b = 0.4;
  double alpha = 0.5;
  int k = 0;
  /// Example 4: 1 for |x-b| log|x-b|, 2 for (x-b) log|x-b|.
  int variant = 1;
};

/// Throws std::invalid_argument for ids outside 1..5.
SingularIntegrand example_integrand(int id, const ExampleOptions& opt = {});

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Sweep-level checks used by the CLI's --check: envelope violations,
/// sign agreement away from leading-term zeros, and corrected error
/// decaying faster than raw.
std::vector<CheckResult> check_sweep(const SingularIntegrand& f,
                                     std::span<const ExperimentRecord> records);

}  // namespace singquad

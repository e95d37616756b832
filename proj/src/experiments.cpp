#include "singquad/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "singquad/gauss_rule.hpp"
#include "singquad/reference_oracle.hpp"
#include "singquad/special_functions.hpp"

namespace singquad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<CoefficientBounds> bounds_for(const SingularIntegrand& f, int n) {
  if (const auto* p = f.as_power()) {
    if (!f.envelope()) {
      return coefficient_bounds(f);
    }
    // The envelope only rescales the jump by e(b + iy/n) = e(b) + O(1/n).
    const double scale = f.envelope()->real(f.b());
    CoefficientBounds c = coefficient_bounds(SingularIntegrand::power(f.b(), p->k, p->alpha));
    c.lower *= scale;
    c.upper *= scale;
    if (c.lower > c.upper) {
      std::swap(c.lower, c.upper);
    }
    return c;
  }
  if (f.as_power_log() != nullptr && !f.envelope()) {
    return log_case_bounds(f, n);
  }
  return std::nullopt;
}

ExperimentRecord make_record(const SingularIntegrand& f, int n, double exact, double order,
                             const PredictorConfig& cfg) {
  const QuadratureRule rule(n);
  const double quad = apply_rule(rule, [&](double x) { return evaluate_real(f, x); });
  ExperimentRecord r;
  r.n = n;
  r.error = exact - quad;
  r.abs_error = std::abs(r.error);
  r.scaled_coeff = std::pow(static_cast<double>(n), order) * r.error;
  r.cos_phase = std::cos((2.0 * n + 1.0) * f.phi());
  r.predicted = leading_term(f, n, cfg);
  r.corrected_error = r.error - r.predicted;
  r.bounds = bounds_for(f, n);
  r.at_machine_floor = r.abs_error < 1e-15 * std::abs(exact);
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  return fmt::format("{:.17g}", v);
}

double parse_double(const std::string& s) {
  if (s == "nan") {
    return kNaN;
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("bad number in CSV: " + s);
  }
  return v;
}

double error_of(const ExperimentRecord& r, ErrorKind kind) {
  return kind == ErrorKind::raw ? r.abs_error : std::abs(r.corrected_error);
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::below_one: return "k+alpha < 1";
    case Regime::critical: return "k+alpha = 1";
    default: return "k+alpha > 1";
  }
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const SingularIntegrand& f, const SweepConfig& cfg) {
  if (cfg.n_min < 10 || cfg.n_min >= cfg.n_max) {
    throw std::invalid_argument("sweep needs 10 <= n_min < n_max");
  }
  const double exact = exact_integral(f).value;
  const double order = predicted_order(f).order_exponent;
  const int count = cfg.n_max - cfg.n_min + 1;
  std::vector<ExperimentRecord> records(static_cast<std::size_t>(count));

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(count));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        records[static_cast<std::size_t>(i)] = make_record(f, cfg.n_min + i, exact, order,
                                                           cfg.predictor);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return records;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg) {
  return run_sweep(parse_integrand(cfg.spec), cfg);
}

void write_csv(std::ostream& os, std::span<const ExperimentRecord> records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.n << ',' << format_double(r.error) << ',' << format_double(r.abs_error) << ','
       << format_double(r.scaled_coeff) << ',' << format_double(r.cos_phase) << ','
       << format_double(r.predicted) << ',' << format_double(r.corrected_error) << ','
       << format_double(r.bounds ? r.bounds->lower : kNaN) << ','
       << format_double(r.bounds ? r.bounds->upper : kNaN) << '\n';
  }
  if (!os) {
    throw std::runtime_error("failed to write CSV");
  }
}

std::vector<ExperimentRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::invalid_argument("CSV header mismatch");
  }
  std::vector<ExperimentRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() != 9) {
      throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " fields");
    }
    ExperimentRecord r;
    r.n = std::stoi(cells[0]);
    r.error = parse_double(cells[1]);
    r.abs_error = parse_double(cells[2]);
    r.scaled_coeff = parse_double(cells[3]);
    r.cos_phase = parse_double(cells[4]);
    r.predicted = parse_double(cells[5]);
    r.corrected_error = parse_double(cells[6]);
    const double lo = parse_double(cells[7]);
    const double hi = parse_double(cells[8]);
    if (!std::isnan(lo) && !std::isnan(hi)) {
      r.bounds = CoefficientBounds{lo, hi, true};
    }
    out.push_back(r);
  }
  return out;
}

double fit_envelope_slope(std::span<const ExperimentRecord> records, int window, ErrorKind kind) {
  if (window < 1) {
    throw std::invalid_argument("window must be positive");
  }
  std::vector<const ExperimentRecord*> usable;
  for (const auto& r : records) {
    if (!r.at_machine_floor) {
      usable.push_back(&r);
    }
  }
  const std::size_t windows = usable.size() / static_cast<std::size_t>(window);
  if (windows < 5) {
    throw std::invalid_argument("slope fit needs at least 5 windows");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t w = 0; w < windows; ++w) {
    const auto begin = usable.begin() + static_cast<std::ptrdiff_t>(w * window);
    std::vector<int> ns;
    double peak = 0.0;
    for (auto it = begin; it != begin + window; ++it) {
      ns.push_back((*it)->n);
      peak = std::max(peak, error_of(**it, kind));
    }
    if (peak <= 0.0) {
      continue;
    }
    std::sort(ns.begin(), ns.end());
    const double median = ns.size() % 2 == 1
                              ? ns[ns.size() / 2]
                              : 0.5 * (ns[ns.size() / 2 - 1] + ns[ns.size() / 2]);
    xs.push_back(std::log(median));
    ys.push_back(std::log(peak));
  }
  if (xs.size() < 2) {
    throw std::domain_error("all errors are zero");
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

int count_envelope_violations(std::span<const ExperimentRecord> records, double rel_tol) {
  int count = 0;
  for (const auto& r : records) {
    if (r.n < 100 || !r.bounds || r.at_machine_floor) {
      continue;
    }
    const double slack = rel_tol * (r.bounds->upper - r.bounds->lower);
    if (r.scaled_coeff > r.bounds->upper + slack || r.scaled_coeff < r.bounds->lower - slack) {
      ++count;
    }
  }
  return count;
}

std::string report(const SingularIntegrand& f, std::span<const ExperimentRecord> records,
                   const SweepConfig& cfg) {
  std::string out;
  auto line = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  const OrderInfo order = predicted_order(f);
  line(fmt::format("integrand: {}", f.describe()));
  line(fmt::format("n range: {}..{} ({} records)", cfg.n_min, cfg.n_max, records.size()));
  line(fmt::format("leading order: n^-{:.4g}{}", order.order_exponent,
                   order.log_factor ? " log n" : ""));
  line(fmt::format("remainder after correction: n^-{:.4g}{} ({})", order.regime_exponent,
                   order.regime_log ? " log n" : "", regime_name(order.regime)));

  const int floors = static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.at_machine_floor; }));
  if (floors > 0) {
    const auto first = std::find_if(records.begin(), records.end(),
                                    [](const auto& r) { return r.at_machine_floor; });
    line(fmt::format("machine floor: {} records, first at n = {}", floors, first->n));
  }

  for (const ErrorKind kind : {ErrorKind::raw, ErrorKind::corrected}) {
    const char* label = kind == ErrorKind::raw ? "raw" : "corrected";
    try {
      line(fmt::format("{} envelope slope (window 20): {:.3f}", label,
                       fit_envelope_slope(records, 20, kind)));
    } catch (const std::exception& e) {
      line(fmt::format("{} envelope slope: unavailable ({})", label, e.what()));
    }
  }

  if (const auto* p = f.as_power(); p != nullptr && !f.envelope()) {
    const double t = p->k + p->alpha;
    const CoefficientBounds c = coefficient_bounds(f);
    line(fmt::format("Gamma({:.4g}) = {:.10g}, zeta({:.4g}) = {:.10g}", t + 1.0, gamma_fn(t + 1.0),
                     t + 1.0, zeta_fn(t + 1.0)));
    line(fmt::format("coefficient bounds: liminf = {:.6f}, limsup = {:.6f} ({})", c.lower, c.upper,
                     c.attainable ? "attained" : "strict"));
    if (p->k % 2 == 0) {
      const double c0 = psi0_solve(p->k, p->alpha);
      line(fmt::format("cos(Psi_0) = {:.10f}", c0));
    }
  } else if (const auto* p = f.as_power_log(); p != nullptr && !f.envelope()) {
    if (p->k % 2 == 0) {
      const LogAffineEnvelope env = log_case_envelope(f);
      line(fmt::format("upper/lower envelopes: {:.3f} log n + {:.3f}, {:.3f} log n + {:.3f}",
                       env.slope_at_plus_one, env.intercept_at_plus_one, env.slope_at_minus_one,
                       env.intercept_at_minus_one));
    } else {
      double peak = 0.0;
      for (const auto& r : records) {
        peak = std::max(peak, std::abs(r.scaled_coeff));
      }
      const double bound = log_case_bounds(f, cfg.n_max).upper;
      line(fmt::format("max |n^{:.4g}R_n| = {:.3f} {} {:.3f}", order.order_exponent, peak,
                       peak < bound ? "<" : ">=", bound));
    }
  }

  bool any_bounds = false;
  for (const auto& r : records) {
    any_bounds = any_bounds || r.bounds.has_value();
  }
  if (any_bounds) {
    line(fmt::format("{} envelope violations", count_envelope_violations(records)));
  }

  const int lo = std::max(cfg.n_min, 100);
  const int hi = std::min(cfg.n_max, lo + 100);
  if (lo < hi) {
    const auto best = recommend_n(f, lo, hi, cfg.predictor);
    std::string list;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, best.size()); ++i) {
      list += (i == 0 ? "" : ", ") + std::to_string(best[i]);
    }
    line(fmt::format("recommended n in [{}, {}]: {}", lo, hi, list));
  }
  return out;
}

SingularIntegrand example_integrand(int id, const ExampleOptions& opt) {
  switch (id) {
    case 1: return SingularIntegrand::abs_power(opt.b, opt.alpha);
    case 2: return SingularIntegrand::power(opt.b, opt.k, 1.0);
    case 3: return SingularIntegrand::power(std::cos(std::numbers::pi / 6.0), 1, 0.5);
    case 4:
      if (opt.variant == 1) {
        return SingularIntegrand::power_log(opt.b, 0, 1.0);
      }
      if (opt.variant == 2) {
        return SingularIntegrand::power_log(opt.b, 1, 0.0);
      }
      throw std::invalid_argument("example 4 variant must be 1 or 2");
    case 5: return SingularIntegrand::power(opt.b, 0, 1.0, Envelope::gaussian(opt.b));
    default: throw std::invalid_argument("example id must be 1..5");
  }
}

std::vector<CheckResult> check_sweep(const SingularIntegrand& f,
                                     std::span<const ExperimentRecord> records) {
  std::vector<CheckResult> out;

  const bool any_bounds =
      std::any_of(records.begin(), records.end(), [](const auto& r) { return r.bounds.has_value(); });
  if (any_bounds) {
    const int v = count_envelope_violations(records);
    out.push_back({"coefficient bounds", v == 0, fmt::format("{} envelope violations", v)});
  }

  const double regime = predicted_order(f).regime_exponent;
  int disagree = 0;
  int tested = 0;
  for (const auto& r : records) {
    if (r.at_machine_floor || r.abs_error <= 10.0 * std::pow(r.n, -regime)) {
      continue;
    }
    ++tested;
    if ((r.error > 0.0) != (r.predicted > 0.0)) {
      ++disagree;
    }
  }
  out.push_back({"sign agreement", disagree == 0,
                 fmt::format("{} of {} records disagree", disagree, tested)});

  try {
    const double raw = fit_envelope_slope(records, 20, ErrorKind::raw);
    const double corrected = fit_envelope_slope(records, 20, ErrorKind::corrected);
    out.push_back({"correction", corrected < raw,
                   fmt::format("slopes raw {:.3f}, corrected {:.3f}", raw, corrected)});
  } catch (const std::exception& e) {
    out.push_back({"correction", true, fmt::format("skipped: {}", e.what())});
  }
  return out;
}

}  // namespace singquad

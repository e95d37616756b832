// singquad: sweeps, predictions and size recommendations for Gauss-Legendre
// quadrature of integrands with an interior singularity.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "singquad/corrected_quadrature.hpp"
#include "singquad/error_predictor.hpp"
#include "singquad/experiments.hpp"
#include "singquad/reference_oracle.hpp"

using namespace singquad;

namespace {

struct Options {
  int example_id = 0;
  ExampleOptions example;
  std::string spec;
  int n = 200;
  int n_min = 10;
  int n_max = 600;
  int top = 10;
  std::string out;
  unsigned threads = 0;
  bool check = false;
  PredictorConfig predictor;
  bool finite_span = false;
};

int run_sweep_command(const SingularIntegrand& f, const Options& opt) {
  SweepConfig cfg;
  cfg.spec = f.describe();
  cfg.n_min = opt.n_min;
  cfg.n_max = opt.n_max;
  cfg.predictor = opt.predictor;
  cfg.threads = opt.threads;
  const auto records = run_sweep(f, cfg);

  if (opt.out.empty() || opt.out == "-") {
    write_csv(std::cout, records);
  } else {
    std::ofstream file(opt.out);
    if (!file) {
      throw std::runtime_error("cannot open " + opt.out);
    }
    write_csv(file, records);
  }
  std::cerr << report(f, records, cfg);

  if (!opt.check) {
    return 0;
  }
  bool ok = true;
  for (const auto& c : check_sweep(f, records)) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

int run_predict(const Options& opt) {
  const SingularIntegrand f = parse_integrand(opt.spec);
  const ErrorPrediction p = predict(f, opt.n, opt.predictor);
  const Phase ph = phase(f, opt.n);
  const double exact = exact_integral(f).value;
  const CorrectedResult c = corrected_integral(f, opt.n, opt.predictor);

  fmt::print("integrand      {}\n", f.describe());
  fmt::print("n              {}\n", opt.n);
  fmt::print("cos(Psi)       {:.12g}\n", ph.cos_psi);
  fmt::print("order          n^-{:.4g}{}\n", p.order.order_exponent,
             p.order.log_factor ? " log n" : "");
  fmt::print("leading term   {:.12e}\n", p.leading);
  fmt::print("coefficient    {:.12g}\n", std::pow(opt.n, p.order.order_exponent) * p.leading);
  if (p.coefficient_bounds) {
    fmt::print("bounds         [{:.6f}, {:.6f}]{}\n", p.coefficient_bounds->lower,
               p.coefficient_bounds->upper, p.coefficient_bounds->attainable ? "" : " (strict)");
  }
  fmt::print("exact          {:.17g}\n", exact);
  fmt::print("gauss          {:.17g}\n", c.raw);
  fmt::print("remainder      {:.12e}\n", exact - c.raw);
  fmt::print("corrected err  {:.12e}\n", exact - c.corrected);
  return 0;
}

int run_recommend(const Options& opt) {
  const SingularIntegrand f = parse_integrand(opt.spec);
  const auto ranked = recommend_n(f, opt.n_min, opt.n_max, opt.predictor);
  const double order = predicted_order(f).order_exponent;
  const int shown = std::min<int>(opt.top, static_cast<int>(ranked.size()));
  fmt::print("{:>6} {:>16} {:>12}\n", "n", "coefficient", "cos(2n+1)phi");
  for (int i = 0; i < shown; ++i) {
    const int n = ranked[i];
    const double coeff = std::pow(n, order) * leading_term(f, n, opt.predictor);
    fmt::print("{:>6} {:>16.6e} {:>12.6f}\n", n, coeff, std::cos((2.0 * n + 1.0) * f.phi()));
  }
  const auto crude = crude_recommendation(f, opt.n_min, opt.n_max);
  std::string list;
  for (int i = 0; i < std::min<int>(shown, static_cast<int>(crude.size())); ++i) {
    list += (i == 0 ? "" : " ") + std::to_string(crude[i]);
  }
  fmt::print("phase-only rule: {}\n", list);
  if (const auto* p = f.as_power(); p != nullptr && p->k % 2 == 0) {
    fmt::print("cos(Psi_0) = {:.10f}\n", psi0_solve(p->k, p->alpha));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-Legendre error prediction for integrands with an interior singularity"};
  app.set_config("--config", "", "flat key = value file; command-line values take precedence");
  app.require_subcommand(1);

  Options opt;
  app.add_option("--spec", opt.spec, "integrand, e.g. \"power(0.4,0,0.5)\"");
  app.add_option("--n", opt.n, "quadrature size for predict")->check(CLI::Range(1, 2000));
  app.add_option("--nmin", opt.n_min, "smallest n");
  app.add_option("--nmax", opt.n_max, "largest n");
  app.add_option("--top", opt.top, "rows printed by recommend")->check(CLI::PositiveNumber);
  app.add_option("--alpha", opt.example.alpha, "example 1 exponent");
  app.add_option("--b", opt.example.b, "singularity location");
  app.add_option("--k", opt.example.k, "example 2 power");
  app.add_option("--variant", opt.example.variant, "example 4 integrand (1 or 2)");
  app.add_option("--out", opt.out, "CSV output path, '-' for stdout");
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)");
  app.add_flag("--check", opt.check, "exit nonzero when a sweep check fails");
  app.add_option("--M", opt.predictor.M, "truncation M log n for general jumps");
  app.add_option("--panel-order", opt.predictor.panel_order, "Gauss points per panel")
      ->check(CLI::Range(2, 200));
  app.add_flag("--finite-span", opt.finite_span, "integrate y over [0, M log n] only");

  auto* example = app.add_subcommand("example", "sweep one of the five worked examples");
  example->add_option("id", opt.example_id, "example number")->required()->check(CLI::Range(1, 5));
  auto* sweep = app.add_subcommand("sweep", "sweep an integrand given by --spec");
  auto* recommend = app.add_subcommand("recommend", "rank n by predicted error in [nmin, nmax]");
  auto* predict_cmd = app.add_subcommand("predict", "leading term and bounds at one n");
  for (auto* sub : {example, sweep, recommend, predict_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  opt.predictor.extend_to_infinity = !opt.finite_span;

  try {
    if (*example) {
      return run_sweep_command(example_integrand(opt.example_id, opt.example), opt);
    }
    if (opt.spec.empty()) {
      std::cerr << "error: --spec is required\n";
      return 2;
    }
    if (*sweep) {
      return run_sweep_command(parse_integrand(opt.spec), opt);
    }
    if (*recommend) {
      return run_recommend(opt);
    }
    return run_predict(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

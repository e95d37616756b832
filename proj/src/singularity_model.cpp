#include "singquad/singularity_model.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <numbers>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace singquad {
namespace {

constexpr double kPi = std::numbers::pi;

Complex i_power(int m) {
  static const std::array<Complex, 4> kTable = {Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                                Complex(0, -1)};
  return kTable[static_cast<std::size_t>(((m % 4) + 4) % 4)];
}

double int_power(double t, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= t;
  }
  return r;
}

void validate(double b, const Family& family) {
  if (!(b > -1.0 && b < 1.0)) {
    throw std::invalid_argument("singularity location b must lie in (-1, 1)");
  }
  if (const auto* p = std::get_if<PowerFamily>(&family)) {
    if (p->k < 0) {
      throw std::invalid_argument("power: k must be >= 0");
    }
    if (!(p->alpha > -1.0 && p->alpha <= 1.0) || p->alpha == 0.0) {
      throw std::invalid_argument("power: alpha must lie in (-1, 0) U (0, 1]");
    }
    if (!(p->k + p->alpha > 0.0)) {
      throw std::invalid_argument("power: k + alpha must be positive");
    }
  } else if (const auto* l = std::get_if<PowerLogFamily>(&family)) {
    if (l->k < 0) {
      throw std::invalid_argument("powerlog: k must be >= 0");
    }
    if (!(l->beta > -1.0 && l->beta <= 1.0)) {
      throw std::invalid_argument("powerlog: beta must lie in (-1, 1]");
    }
    if (l->beta <= 0.0 && l->k < 1) {
      throw std::invalid_argument("powerlog: beta <= 0 requires k >= 1");
    }
  } else if (const auto* g = std::get_if<GeneralJumpFamily>(&family)) {
    if (!g->real_eval || !g->jump_eval) {
      throw std::invalid_argument("general: real and jump evaluators are required");
    }
    if (g->holder_k < 0 || !(g->holder_alpha > 0.0 && g->holder_alpha <= 1.0)) {
      throw std::invalid_argument("general: holder class must have k >= 0, alpha in (0, 1]");
    }
  }
}

}  // namespace

Envelope Envelope::gaussian(double b) {
  Envelope e;
  e.kind = Kind::gaussian;
  e.name = "gauss";
  e.real = [b](double x) { return std::exp(-(x - b) * (x - b)); };
  e.analytic = [b](Complex z) { return std::exp(-(z - b) * (z - b)); };
  return e;
}

SingularIntegrand::SingularIntegrand(double b, Family family, std::optional<Envelope> envelope)
    : b_(b), family_(std::move(family)), envelope_(std::move(envelope)) {
  validate(b_, family_);
}

SingularIntegrand SingularIntegrand::power(double b, int k, double alpha,
                                           std::optional<Envelope> envelope) {
  return {b, PowerFamily{k, alpha}, std::move(envelope)};
}

SingularIntegrand SingularIntegrand::abs_power(double b, double exponent,
                                               std::optional<Envelope> envelope) {
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("abs_power: exponent must be positive");
  }
  // exponent = 2m + alpha with alpha in (-1, 1], so |t|^exponent = t^{2m} |t|^alpha.
  const int m = static_cast<int>(std::ceil((exponent - 1.0) / 2.0));
  const double alpha = exponent - 2.0 * m;
  if (alpha == 0.0) {
    throw std::invalid_argument("abs_power: even integer exponents are smooth");
  }
  return power(b, 2 * m, alpha, std::move(envelope));
}

SingularIntegrand SingularIntegrand::power_log(double b, int k, double beta,
                                               std::optional<Envelope> envelope) {
  return {b, PowerLogFamily{k, beta}, std::move(envelope)};
}

SingularIntegrand SingularIntegrand::general(double b, GeneralJumpFamily family) {
  return {b, std::move(family)};
}

double SingularIntegrand::phi() const { return std::acos(b_); }

bool SingularIntegrand::is_pure() const { return !envelope_ && !as_general(); }

std::string SingularIntegrand::describe() const {
  std::string base;
  if (const auto* p = as_power()) {
    base = fmt::format("power({},{},{})", b_, p->k, p->alpha);
  } else if (const auto* l = as_power_log()) {
    base = fmt::format("powerlog({},{},{})", b_, l->k, l->beta);
  } else {
    const auto* g = as_general();
    base = fmt::format("general({},{},{})", b_, g->holder_k, g->holder_alpha);
  }
  if (envelope_) {
    base += " envelope=" + envelope_->name;
  }
  return base;
}

double evaluate_real(const SingularIntegrand& f, double x) {
  double value = 0.0;
  const double t = x - f.b();
  if (const auto* p = f.as_power()) {
    value = (t == 0.0) ? 0.0 : int_power(t, p->k) * std::pow(std::abs(t), p->alpha);
  } else if (const auto* l = f.as_power_log()) {
    value = (t == 0.0) ? 0.0
                       : int_power(t, l->k) * std::pow(std::abs(t), l->beta) *
                             std::log(std::abs(t));
  } else {
    value = f.as_general()->real_eval(x);
  }
  if (f.envelope()) {
    value *= f.envelope()->real(x);
  }
  return value;
}

HolderClass holder_class(const SingularIntegrand& f) {
  if (const auto* p = f.as_power()) {
    if (p->alpha > 0.0) {
      return {p->k, p->alpha, false};
    }
    return {p->k - 1, p->alpha + 1.0, false};
  }
  if (const auto* l = f.as_power_log()) {
    if (l->beta > 0.0) {
      return {l->k, l->beta, true};
    }
    if (l->k >= 1) {
      return {l->k - 1, l->beta + 1.0, true};
    }
    throw std::invalid_argument("holder_class: powerlog with beta <= 0 needs k >= 1");
  }
  if (const auto* g = f.as_general()) {
    return {g->holder_k, g->holder_alpha, false};
  }
  throw std::invalid_argument("holder_class: unknown family");
}

Complex jump(const SingularIntegrand& f, double y, int n) {
  const double t = y / n;
  Complex value;
  if (const auto* p = f.as_power()) {
    value = 2.0 * i_power(p->k + 1) * std::sin(p->alpha * kPi / 2.0) *
            std::pow(t, p->k + p->alpha);
  } else if (const auto* l = f.as_power_log()) {
    const double bracket = 2.0 * std::sin(l->beta * kPi / 2.0) * std::log(t) +
                           kPi * std::sin((l->beta + 1.0) * kPi / 2.0);
    value = i_power(l->k + 1) * std::pow(t, l->k + l->beta) * bracket;
  } else {
    value = f.as_general()->jump_eval(y, n);
  }
  if (f.envelope()) {
    value *= f.envelope()->analytic(Complex(f.b(), t));
  }
  return value;
}

Phase phase(double b, int n) {
  // pi/2 split into two doubles.
  constexpr double kHalfPiHi = 1.5707963267948966;
  constexpr double kHalfPiLo = 6.123233995736766e-17;

  Phase ph;
  ph.phi = std::acos(b);
  // One Newton step on cos(phi) = b recovers the bits acos rounded away;
  // they matter when (2n+1) phi lands on a multiple of pi.
  const double phi_lo = (std::cos(ph.phi) - b) / std::sin(ph.phi);

  // t = (2n+1) phi - pi/2 as hi + lo.
  const double m = 2.0 * n + 1.0;
  const double p = m * ph.phi;
  const double p_err = std::fma(m, ph.phi, -p);
  const double t_hi = p - kHalfPiHi;
  const double t_hi_err = (p - t_hi) - kHalfPiHi;
  const double t_lo = t_hi_err + p_err + m * phi_lo - kHalfPiLo;

  // t = q pi/2 + r with |r| <= pi/4.
  const double q = std::nearbyint((t_hi + t_lo) / kHalfPiHi);
  const double qh = q * kHalfPiHi;
  const double qh_err = std::fma(q, kHalfPiHi, -qh);
  const double r = ((t_hi - qh) - qh_err) + t_lo - q * kHalfPiLo;

  const int quadrant = static_cast<int>(std::fmod(q, 4.0) + 4.0) % 4;
  const double c = std::cos(r);
  const double s = std::sin(r);
  switch (quadrant) {
    case 0:
      ph.cos_psi = c;
      ph.sin_psi = s;
      ph.one_plus_cos_psi = 1.0 + c;
      break;
    case 1:
      ph.cos_psi = -s;
      ph.sin_psi = c;
      ph.one_plus_cos_psi = 1.0 - s;
      break;
    case 2: {
      ph.cos_psi = -c;
      ph.sin_psi = -s;
      const double h = std::sin(0.5 * r);
      ph.one_plus_cos_psi = 2.0 * h * h;
      break;
    }
    default:
      ph.cos_psi = s;
      ph.sin_psi = -c;
      ph.one_plus_cos_psi = 1.0 + s;
      break;
  }
  ph.psi = quadrant * kHalfPiHi + r;
  if (ph.psi < 0.0) {
    ph.psi += 4.0 * kHalfPiHi;
  }
  return ph;
}

Phase phase(const SingularIntegrand& f, int n) { return phase(f.b(), n); }

SingularIntegrand parse_integrand(std::string_view text) {
  static const std::regex kPattern(
      R"(^\s*(power|powerlog|abspower)\s*\(([^)]*)\)\s*(?:[,;\s]\s*envelope\s*=\s*(\w+))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kPattern)) {
    throw std::invalid_argument("cannot parse integrand spec '" + s + "'");
  }
  std::vector<double> args;
  {
    const std::string list = m[2].str();
    std::size_t start = 0;
    while (start <= list.size()) {
      const std::size_t comma = std::min(list.find(',', start), list.size());
      const std::string item = list.substr(start, comma - start);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + item + "' in '" + s + "'");
      }
      if (item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("bad number '" + item + "' in '" + s + "'");
      }
      args.push_back(v);
      start = comma + 1;
    }
  }

  std::optional<Envelope> envelope;
  const std::string kind = m[1].str();
  const double b = args.empty() ? 0.0 : args[0];
  if (m[3].matched) {
    if (m[3].str() != "gauss") {
      throw std::invalid_argument("unknown envelope '" + m[3].str() + "'");
    }
    envelope = Envelope::gaussian(b);
  }

  auto as_int = [&](double v) {
    if (v != std::floor(v)) {
      throw std::invalid_argument("k must be an integer in '" + s + "'");
    }
    return static_cast<int>(v);
  };
  if (kind == "abspower") {
    if (args.size() != 2) {
      throw std::invalid_argument("abspower expects (b, exponent)");
    }
    return SingularIntegrand::abs_power(b, args[1], envelope);
  }
  if (args.size() != 3) {
    throw std::invalid_argument(kind + " expects (b, k, exponent)");
  }
  if (kind == "power") {
    return SingularIntegrand::power(b, as_int(args[1]), args[2], envelope);
  }
  return SingularIntegrand::power_log(b, as_int(args[1]), args[2], envelope);
}

}  // namespace singquad

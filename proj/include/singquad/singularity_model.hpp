#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "singquad/legendre.hpp"

namespace singquad {

/// (x-b)^k |x-b|^alpha, alpha in (-1,0) U (0,1], k + alpha > 0.
struct PowerFamily {
  int k = 0;
  double alpha = 0.5;
};

/// (x-b)^k |x-b|^beta log|x-b|, beta in (-1,1], with beta > 0 or k >= 1.
struct PowerLogFamily {
  int k = 0;
  double beta = 1.0;
};

/// Caller-supplied integrand with a known branch-cut jump.
struct GeneralJumpFamily {
  std::function<double(double)> real_eval;
  /// [f(b + i y/n)] as a function of (y, n).
  std::function<Complex(double, int)> jump_eval;
  int holder_k = 0;
  double holder_alpha = 1.0;
};

using Family = std::variant<PowerFamily, PowerLogFamily, GeneralJumpFamily>;

/// Analytic factor multiplying the singular part. It is single-valued near
/// b, so it factors out of the jump.
struct Envelope {
  enum class Kind { gaussian, custom };

  Kind kind = Kind::custom;
  std::string name;
  std::function<double(double)> real;
  std::function<Complex(Complex)> analytic;

  /// exp(-(x - b)^2).
  static Envelope gaussian(double b);
};

/// Hoelder-type class D_b^{k,alpha}. `open` marks a supremum exponent: any
/// exponent strictly below alpha is valid (logarithmic families).
struct HolderClass {
  int k = 0;
  double alpha = 1.0;
  bool open = false;
};

/// phi = arccos(b), Psi = (2n+1) phi - pi/2 reduced to [0, 2 pi). The
/// reduction carries phi and pi/2 to about 1e-32, so b = 0 gives cos(Psi)
/// exactly +-1.
struct Phase {
  double phi = 0.0;
  double psi = 0.0;
  double cos_psi = 0.0;
  double sin_psi = 0.0;
  /// 1 + cos(Psi) with full relative accuracy when cos(Psi) is close to -1.
  double one_plus_cos_psi = 0.0;
};

Phase phase(double b, int n);

class SingularIntegrand {
 public:
  /// Throws std::invalid_argument when b is not in (-1, 1) or the family
  /// parameters violate the family's invariants.
  SingularIntegrand(double b, Family family, std::optional<Envelope> envelope = std::nullopt);

  static SingularIntegrand power(double b, int k, double alpha,
                                 std::optional<Envelope> envelope = std::nullopt);
  /// |x-b|^exponent for any exponent > 0 that is not an even integer,
  /// rewritten as (x-b)^k |x-b|^alpha with alpha in (-1, 1]
  /// (e.g. |x-b|^1.5 = (x-b)^2 |x-b|^-0.5).
  static SingularIntegrand abs_power(double b, double exponent,
                                     std::optional<Envelope> envelope = std::nullopt);
  static SingularIntegrand power_log(double b, int k, double beta,
                                     std::optional<Envelope> envelope = std::nullopt);
  static SingularIntegrand general(double b, GeneralJumpFamily family);

  double b() const { return b_; }
  double phi() const;
  const Family& family() const { return family_; }
  const std::optional<Envelope>& envelope() const { return envelope_; }

  const PowerFamily* as_power() const { return std::get_if<PowerFamily>(&family_); }
  const PowerLogFamily* as_power_log() const { return std::get_if<PowerLogFamily>(&family_); }
  const GeneralJumpFamily* as_general() const { return std::get_if<GeneralJumpFamily>(&family_); }

  /// True for power and power-log families with no envelope.
  bool is_pure() const;

  /// Round-trippable text form, e.g. "power(0.4,0,0.5) envelope=gauss".
  std::string describe() const;

 private:
  double b_;
  Family family_;
  std::optional<Envelope> envelope_;
};

/// f(x) on [-1, 1]. At x = b the continuous value 0 is returned for the
/// power and power-log families (their exponents are positive by
/// construction).
double evaluate_real(const SingularIntegrand& f, double x);

/// Throws std::invalid_argument when the family cannot be classified.
HolderClass holder_class(const SingularIntegrand& f);

/// Jump [f(b + i y/n)] = f(b^+ + i y/n) - f(b^- + i y/n), from closed forms:
///   power:     2 i^{k+1} sin(alpha pi/2) (y/n)^{k+alpha}
///   power-log: i^{k+1} (y/n)^{k+beta} [2 sin(beta pi/2) log(y/n) + pi sin((beta+1) pi/2)]
/// times the envelope evaluated at b + i y/n.
Complex jump(const SingularIntegrand& f, double y, int n);

Phase phase(const SingularIntegrand& f, int n);

/// Parses "power(b,k,alpha)", "powerlog(b,k,beta)" or "abspower(b,a)", each
/// optionally followed by "envelope=gauss" (separated by whitespace, ',' or
/// ';'). Throws std::invalid_argument on malformed input.
SingularIntegrand parse_integrand(std::string_view text);

}  // namespace singquad

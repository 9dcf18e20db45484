#pragma once

#include <string>

namespace onet {

// Per-class utility g(x) of delivered throughput. Concave and increasing on
// [0, inf) for every kind within its validated parameter domain:
//   linear:     g(x) = weight * x
//   log:        g(x) = weight * log(x + shift),   shift >= 0
//   alpha_fair: g(x) = x^(1-alpha) / (1-alpha),   alpha > 0 (alpha == 1 is log x)
// log with shift 0 and alpha_fair have unbounded derivative at 0; callers that
// need a derivative bound state the x >= eps restriction explicitly.
struct UtilitySpec {
  enum class Kind { Linear, Log, AlphaFair };

  Kind kind = Kind::Linear;
  double weight = 1.0;  // slope of linear, or multiplier of log
  double shift = 0.0;   // log only
  double alpha = 1.0;   // alpha_fair only

  static UtilitySpec linear(double weight);
  static UtilitySpec log_utility(double weight, double shift = 0.0);
  static UtilitySpec alpha_fair(double alpha);

  double value(double x) const;       // g(x); may be -inf at x = 0
  double derivative(double x) const;  // g'(x); may be +inf at x = 0

  bool is_linear() const { return kind == Kind::Linear; }

  // Throws ConfigError naming `field` on invalid parameters.
  void validate(const std::string& field) const;

  bool operator==(const UtilitySpec&) const = default;
};

const char* utility_kind_name(UtilitySpec::Kind kind);

// Upper bound m on |g'(x)|. For log with shift > 0 the bound g'(0) holds on
// all of [0, inf). For log with shift 0 and for alpha_fair the returned bound
// g'(eps) is valid on [eps, inf) only; callers own that restriction.
double derivative_bound(const UtilitySpec& u, double eps);

// True when g'(x) -> inf as x -> 0 (log with shift 0, alpha_fair). For these
// the derivative_bound above only holds away from 0, and utility-vs-gap
// comparisons use the bounded-slope extension instead of g itself.
bool unbounded_derivative_at_zero(const UtilitySpec& u);

}  // namespace onet

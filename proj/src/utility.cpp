#include "overloadnet/utility.hpp"

#include <cmath>

#include "overloadnet/errors.hpp"

namespace onet {

UtilitySpec UtilitySpec::linear(double weight) {
  UtilitySpec u;
  u.kind = Kind::Linear;
  u.weight = weight;
  return u;
}

UtilitySpec UtilitySpec::log_utility(double weight, double shift) {
  UtilitySpec u;
  u.kind = Kind::Log;
  u.weight = weight;
  u.shift = shift;
  return u;
}

UtilitySpec UtilitySpec::alpha_fair(double alpha) {
  UtilitySpec u;
  u.kind = Kind::AlphaFair;
  u.alpha = alpha;
  return u;
}

double UtilitySpec::value(double x) const {
  switch (kind) {
    case Kind::Linear:
      return weight * x;
    case Kind::Log:
      return weight * std::log(x + shift);
    case Kind::AlphaFair:
      if (alpha == 1.0) return std::log(x);
      return std::pow(x, 1.0 - alpha) / (1.0 - alpha);
  }
  return 0.0;
}

double UtilitySpec::derivative(double x) const {
  switch (kind) {
    case Kind::Linear:
      return weight;
    case Kind::Log:
      return weight / (x + shift);
    case Kind::AlphaFair:
      return std::pow(x, -alpha);
  }
  return 0.0;
}

void UtilitySpec::validate(const std::string& field) const {
  if (!std::isfinite(weight) || weight < 0.0)
    throw ConfigError(field, "utility weight must be finite and nonnegative");
  switch (kind) {
    case Kind::Linear:
      break;
    case Kind::Log:
      if (!std::isfinite(shift) || shift < 0.0)
        throw ConfigError(field, "log utility shift must be finite and nonnegative");
      break;
    case Kind::AlphaFair:
      if (!std::isfinite(alpha) || alpha <= 0.0)
        throw ConfigError(field, "alpha_fair utility requires alpha > 0");
      break;
  }
}

const char* utility_kind_name(UtilitySpec::Kind kind) {
  switch (kind) {
    case UtilitySpec::Kind::Linear:
      return "linear";
    case UtilitySpec::Kind::Log:
      return "log";
    case UtilitySpec::Kind::AlphaFair:
      return "alpha_fair";
  }
  return "?";
}

double derivative_bound(const UtilitySpec& u, double eps) {
  if (!(eps > 0.0)) throw ConfigError("derivative_bound requires eps > 0");
  u.validate("utility");
  switch (u.kind) {
    case UtilitySpec::Kind::Linear:
      return u.weight;
    case UtilitySpec::Kind::Log:
      // shift > 0 bounds g' on all of [0, inf); shift == 0 only on [eps, inf).
      return u.shift > 0.0 ? u.weight / u.shift : u.weight / eps;
    case UtilitySpec::Kind::AlphaFair:
      return std::pow(eps, -u.alpha);
  }
  return 0.0;
}

bool unbounded_derivative_at_zero(const UtilitySpec& u) {
  switch (u.kind) {
    case UtilitySpec::Kind::Linear:
      return false;
    case UtilitySpec::Kind::Log:
      return u.shift == 0.0;
    case UtilitySpec::Kind::AlphaFair:
      return true;
  }
  return false;
}

}  // namespace onet

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace onet {

// Invalid user-supplied configuration. `field` is a path into the config
// document ("classes[0].destination") when one is known; empty otherwise.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  explicit ConfigError(const std::string& message) : ConfigError("", message) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A runtime invariant that must hold by construction was broken. Always an
// implementation bug, never an expected outcome. The CLI maps this to exit
// code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace onet

#pragma once

#include <stdexcept>
#include <string>

namespace omf {

// Raised when an operation's input violates its documented precondition.
// `rule` names the violated condition, e.g. "tilde requires regular f".
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string operation, std::string rule)
      : std::invalid_argument(operation + ": " + rule),
        operation_(std::move(operation)),
        rule_(std::move(rule)) {}

  const std::string& operation() const noexcept { return operation_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string operation_;
  std::string rule_;
};

// Iterative or numerical procedure did not produce a usable answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace omf

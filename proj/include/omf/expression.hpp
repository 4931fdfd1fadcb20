#pragma once

// Restricted arithmetic expressions in one variable x, used for user-supplied
// scalar functions on the command line.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | 'x' | 'beta' | ('log' | 'sqrt') '(' expr ')' | '(' expr ')'
//
// 'beta' is replaced by a literal supplied at parse time.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omf/function.hpp"

namespace omf {

class Expression {
 public:
  static Expression parse(std::string_view text, std::optional<double> beta = std::nullopt);

  double operator()(double x) const;
  const std::string& text() const noexcept { return text_; }

  enum class Op { constant, variable, add, sub, mul, div, pow, neg, log, sqrt };
  struct Instr {
    Op op;
    double value = 0.0;
  };

 private:
  std::string text_;
  std::vector<Instr> tape_;  // postfix
};

// Descriptor of provenance "user" with unknown regularity.
FunctionDescriptor user_function(std::string_view text, std::optional<double> beta = std::nullopt);

}  // namespace omf

#include "omf/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "omf/error.hpp"

namespace omf {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::optional<double> beta) : s_(text), beta_(beta) {}

  std::vector<Expression::Instr> run() {
    expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return std::move(tape_);
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("expression", what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void emit(Op op, double v = 0.0) { tape_.push_back({op, v}); }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        emit(Op::add);
      } else if (accept('-')) {
        term();
        emit(Op::sub);
      } else {
        return;
      }
    }
  }

  void term() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        emit(Op::mul);
      } else if (accept('/')) {
        unary();
        emit(Op::div);
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      emit(Op::neg);
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  void power() {
    primary();
    if (accept('^')) {
      unary();
      emit(Op::pow);
    }
  }

  void primary() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      expr();
      expect(')');
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      emit(Op::constant, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t begin = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view word = s_.substr(begin, pos_ - begin);
      if (word == "x") {
        emit(Op::variable);
      } else if (word == "beta") {
        if (!beta_) fail("'beta' used but no beta value supplied");
        emit(Op::constant, *beta_);
      } else if (word == "log" || word == "sqrt") {
        expect('(');
        expr();
        expect(')');
        emit(word == "log" ? Op::log : Op::sqrt);
      } else {
        pos_ = begin;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      return;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::optional<double> beta_;
  std::size_t pos_ = 0;
  std::vector<Expression::Instr> tape_;
};

}  // namespace

Expression Expression::parse(std::string_view text, std::optional<double> beta) {
  Expression e;
  e.text_ = std::string(text);
  e.tape_ = Parser(text, beta).run();
  return e;
}

double Expression::operator()(double x) const {
  std::vector<double> stack;
  stack.reserve(tape_.size());
  const auto pop = [&stack] {
    const double v = stack.back();
    stack.pop_back();
    return v;
  };
  for (const auto& in : tape_) {
    switch (in.op) {
      case Op::constant: stack.push_back(in.value); break;
      case Op::variable: stack.push_back(x); break;
      case Op::neg: stack.back() = -stack.back(); break;
      case Op::log: stack.back() = std::log(stack.back()); break;
      case Op::sqrt: stack.back() = std::sqrt(stack.back()); break;
      default: {
        const double rhs = pop();
        double& lhs = stack.back();
        switch (in.op) {
          case Op::add: lhs += rhs; break;
          case Op::sub: lhs -= rhs; break;
          case Op::mul: lhs *= rhs; break;
          case Op::div: lhs /= rhs; break;
          case Op::pow: lhs = std::pow(lhs, rhs); break;
          default: break;
        }
      }
    }
  }
  return stack.back();
}

FunctionDescriptor user_function(std::string_view text, std::optional<double> beta) {
  auto e = Expression::parse(text, beta);
  FunctionDescriptor::Traits t;
  t.beta = beta;
  t.provenance = Provenance::user;
  return {"expr:" + e.text(), [e = std::move(e)](double x) { return e(x); }, std::move(t)};
}

}  // namespace omf

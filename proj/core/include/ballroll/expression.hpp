#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ballroll {

/// Arithmetic expression in the variables x and y, compiled to a postfix
/// program. Grammar: + - * / ^ (right associative), unary minus,
/// parentheses, numeric literals, the constants pi and e, and the functions
/// sin, cos, exp, sqrt. The name t is accepted as an alias of x so curve
/// paths can be written in their parameter.
class Expression {
 public:
  /// Throws ParseError with the offending column on malformed input.
  static Expression parse(std::string_view text);

  [[nodiscard]] double operator()(double x, double y) const;
  [[nodiscard]] const std::string& text() const noexcept { return text_; }

 private:
  enum class Op { Push, X, Y, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt };
  struct Instr {
    Op op;
    double value = 0.0;
  };

  friend class ExpressionParser;

  std::string text_;
  std::vector<Instr> program_;
};

}  // namespace ballroll

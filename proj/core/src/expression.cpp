#include <ballroll/expression.hpp>
#include <ballroll/types.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace ballroll {

// Recursive descent:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression run() {
    Expression out;
    out.text_ = std::string(text_);
    program_ = &out.program_;
    expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    if (program_->empty()) error("empty expression");
    return out;
  }

 private:
  using Op = Expression::Op;

  void emit(Op op, double value = 0.0) { program_->push_back({op, value}); }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError,
         fmt::format("{} at column {} in expression '{}'", what, pos_ + 1, text_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        emit(Op::Add);
      } else if (accept('-')) {
        term();
        emit(Op::Sub);
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
        emit(Op::Mul);
      } else if (accept('/')) {
        unary();
        emit(Op::Div);
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      emit(Op::Neg);
      return;
    }
    accept('+');
    power();
  }

  void power() {
    atom();
    if (accept('^')) {
      unary();
      emit(Op::Pow);
    }
  }

  void atom() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      expr();
      if (!accept(')')) error("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      identifier();
      return;
    }
    error(fmt::format("unexpected character '{}'", c));
  }

  void number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) error("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    emit(Op::Push, value);
  }

  void identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return emit(Op::X);
    if (name == "t") return emit(Op::X);
    if (name == "y") return emit(Op::Y);
    if (name == "pi") return emit(Op::Push, std::numbers::pi);
    if (name == "e") return emit(Op::Push, std::numbers::e);

    Op fn;
    if (name == "sin") {
      fn = Op::Sin;
    } else if (name == "cos") {
      fn = Op::Cos;
    } else if (name == "exp") {
      fn = Op::Exp;
    } else if (name == "sqrt") {
      fn = Op::Sqrt;
    } else {
      pos_ = start;
      error(fmt::format("unknown identifier '{}'", name));
    }
    if (!accept('(')) error("expected '(' after function name");
    expr();
    if (!accept(')')) error("expected ')'");
    emit(fn);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Expression::Instr>* program_ = nullptr;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

double Expression::operator()(double x, double y) const {
  // Depth is bounded by the program length.
  double stack[64] = {};
  std::vector<double> heap;
  double* s = stack;
  if (program_.size() > 64) {
    heap.resize(program_.size());
    s = heap.data();
  }
  std::size_t top = 0;
  for (const Instr& in : program_) {
    switch (in.op) {
      case Op::Push: s[top++] = in.value; break;
      case Op::X: s[top++] = x; break;
      case Op::Y: s[top++] = y; break;
      case Op::Add: --top; s[top - 1] += s[top]; break;
      case Op::Sub: --top; s[top - 1] -= s[top]; break;
      case Op::Mul: --top; s[top - 1] *= s[top]; break;
      case Op::Div: --top; s[top - 1] /= s[top]; break;
      case Op::Pow: --top; s[top - 1] = std::pow(s[top - 1], s[top]); break;
      case Op::Neg: s[top - 1] = -s[top - 1]; break;
      case Op::Sin: s[top - 1] = std::sin(s[top - 1]); break;
      case Op::Cos: s[top - 1] = std::cos(s[top - 1]); break;
      case Op::Exp: s[top - 1] = std::exp(s[top - 1]); break;
      case Op::Sqrt: s[top - 1] = std::sqrt(s[top - 1]); break;
    }
  }
  return s[0];
}

}  // namespace ballroll

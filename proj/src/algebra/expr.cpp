#include "ramsey/algebra/expr.hpp"

#include <cctype>
#include <utility>

namespace ramsey::algebra {

ParseError::ParseError(const std::string& message, std::size_t position)
    : AlgebraError(message + " at position " + std::to_string(position)),
      position_(position) {}

AlgExpr::AlgExpr(Kind kind, Rat value,
                 std::vector<std::shared_ptr<const AlgExpr>> ops)
    : kind_(kind), value_(std::move(value)), operands_(std::move(ops)) {}

AlgExpr AlgExpr::literal(Rat value) {
  value.canonicalize();
  if (value < 0) throw AlgebraError("literals are nonnegative; use negation");
  return AlgExpr(Kind::Literal, std::move(value), {});
}

AlgExpr AlgExpr::neg(AlgExpr x) {
  return AlgExpr(Kind::Neg, 0, {std::make_shared<const AlgExpr>(std::move(x))});
}

AlgExpr AlgExpr::sqrt(AlgExpr x) {
  return AlgExpr(Kind::Sqrt, 0, {std::make_shared<const AlgExpr>(std::move(x))});
}

AlgExpr AlgExpr::binary(Kind kind, AlgExpr lhs, AlgExpr rhs) {
  if (kind == Kind::Literal || kind == Kind::Neg || kind == Kind::Sqrt) {
    throw AlgebraError("not a binary operator");
  }
  return AlgExpr(kind, 0,
                 {std::make_shared<const AlgExpr>(std::move(lhs)),
                  std::make_shared<const AlgExpr>(std::move(rhs))});
}

bool operator==(const AlgExpr& x, const AlgExpr& y) {
  if (x.kind_ != y.kind_ || x.operands_.size() != y.operands_.size()) {
    return false;
  }
  if (x.kind_ == AlgExpr::Kind::Literal) return x.value_ == y.value_;
  for (std::size_t i = 0; i < x.operands_.size(); ++i) {
    if (!(*x.operands_[i] == *y.operands_[i])) return false;
  }
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AlgExpr parse() {
    AlgExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool digit_at(std::size_t i) const {
    return i < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[i])) != 0;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  AlgExpr expr() {
    AlgExpr lhs = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      AlgExpr rhs = term();
      lhs = AlgExpr::binary(c == '+' ? AlgExpr::Kind::Add : AlgExpr::Kind::Sub,
                            std::move(lhs), std::move(rhs));
    }
  }

  AlgExpr term() {
    AlgExpr lhs = factor();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      AlgExpr rhs = factor();
      lhs = AlgExpr::binary(c == '*' ? AlgExpr::Kind::Mul : AlgExpr::Kind::Div,
                            std::move(lhs), std::move(rhs));
    }
  }

  AlgExpr factor() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return AlgExpr::neg(factor());
    }
    if (c == '(') {
      ++pos_;
      AlgExpr e = expr();
      expect(')');
      return e;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      AlgExpr e = expr();
      expect(')');
      return AlgExpr::sqrt(std::move(e));
    }
    if (digit_at(pos_)) return rational();
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character");
  }

  AlgExpr rational() {
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    mpz_class num(std::string(text_.substr(start, pos_ - start)));
    mpz_class den = 1;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      fail("decimal literals are not allowed");
    }
    if (pos_ < text_.size() && text_[pos_] == '/' && digit_at(pos_ + 1)) {
      const std::size_t den_start = ++pos_;
      while (digit_at(pos_)) ++pos_;
      den = mpz_class(std::string(text_.substr(den_start, pos_ - den_start)));
      if (den == 0) {
        pos_ = den_start;
        fail("zero denominator");
      }
      if (pos_ < text_.size() && text_[pos_] == '.') {
        fail("decimal literals are not allowed");
      }
    }
    return AlgExpr::literal(Rat(num, den));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(AlgExpr::Kind k) {
  switch (k) {
    case AlgExpr::Kind::Add:
    case AlgExpr::Kind::Sub: return 1;
    case AlgExpr::Kind::Mul:
    case AlgExpr::Kind::Div: return 2;
    default: return 3;
  }
}

std::string wrap(const AlgExpr& e, int min_prec) {
  std::string s = print(e);
  return precedence(e.kind()) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

AlgExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print(const AlgExpr& e) {
  using K = AlgExpr::Kind;
  switch (e.kind()) {
    case K::Literal: return e.value().get_str();
    case K::Neg: return "-" + wrap(e.operand(0), 3);
    case K::Sqrt: return "sqrt(" + print(e.operand(0)) + ")";
    default: break;
  }
  const int p = precedence(e.kind());
  std::string lhs = wrap(e.operand(0), p);
  std::string rhs = wrap(e.operand(1), p + 1);
  char op = '+';
  switch (e.kind()) {
    case K::Add: op = '+'; break;
    case K::Sub: op = '-'; break;
    case K::Mul: op = '*'; break;
    case K::Div:
      op = '/';
      // "a/2" followed by a digit would lex as a rational literal.
      if (std::isdigit(static_cast<unsigned char>(rhs.front())) != 0) {
        rhs = "(" + rhs + ")";
      }
      break;
    default: break;
  }
  return lhs + op + rhs;
}

TowerElem evaluate(const AlgExpr& e) {
  using K = AlgExpr::Kind;
  switch (e.kind()) {
    case K::Literal: return TowerElem(e.value());
    case K::Neg: return -evaluate(e.operand(0));
    case K::Sqrt: return sqrt_adjoin(evaluate(e.operand(0)));
    case K::Add: return evaluate(e.operand(0)) + evaluate(e.operand(1));
    case K::Sub: return evaluate(e.operand(0)) - evaluate(e.operand(1));
    case K::Mul: return evaluate(e.operand(0)) * evaluate(e.operand(1));
    case K::Div: return evaluate(e.operand(0)) / evaluate(e.operand(1));
  }
  throw AlgebraError("unknown expression node");
}

TowerElem parse_value(std::string_view text) {
  return evaluate(parse_expr(text));
}

}  // namespace ramsey::algebra

#pragma once

// Radical expressions: the interchange format for every number in a
// certificate.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := rational | '-' factor | '(' expr ')' | 'sqrt' '(' expr ')'
//
// A rational literal is `p` or `p/q`; the lexer reads `p/q` as one literal
// when a digit follows the slash. Decimal points are rejected.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/algebra/tower.hpp"

namespace ramsey::algebra {

class ParseError : public AlgebraError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class AlgExpr {
 public:
  enum class Kind { Literal, Neg, Add, Sub, Mul, Div, Sqrt };

  static AlgExpr literal(Rat value);  // value must be ≥ 0
  static AlgExpr neg(AlgExpr x);
  static AlgExpr sqrt(AlgExpr x);
  static AlgExpr binary(Kind kind, AlgExpr lhs, AlgExpr rhs);

  Kind kind() const { return kind_; }
  const Rat& value() const { return value_; }
  const AlgExpr& operand(std::size_t i) const { return *operands_.at(i); }
  std::size_t arity() const { return operands_.size(); }

  friend bool operator==(const AlgExpr& x, const AlgExpr& y);

 private:
  AlgExpr(Kind kind, Rat value, std::vector<std::shared_ptr<const AlgExpr>> ops);

  Kind kind_;
  Rat value_;
  std::vector<std::shared_ptr<const AlgExpr>> operands_;
};

AlgExpr parse_expr(std::string_view text);

/// Minimal-parenthesis rendering; parse_expr(print(e)) == e.
std::string print(const AlgExpr& e);

/// Exact value. Throws AlgebraError on sqrt of a negative value or division
/// by zero.
TowerElem evaluate(const AlgExpr& e);

TowerElem parse_value(std::string_view text);

}  // namespace ramsey::algebra

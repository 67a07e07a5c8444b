#pragma once

// Real-valued expressions in one variable x.
//
// Grammar (all binary operators left-associative):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)*
//   exponent:= '-' exponent | primary
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := exp | sin | cos | abs | log
// Numbers accept decimal and e-notation.

#include <memory>
#include <string>
#include <string_view>

#include "qalab/approx_core.hpp"

namespace qalab {

enum class ExprOp { Variable, Literal, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class ExprFunc { Exp, Sin, Cos, Abs, Log };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprOp op = ExprOp::Literal;
  double value = 0.0;  // Literal
  ExprFunc func = ExprFunc::Exp;  // Call
  ExprNodePtr lhs;  // operand of Neg and Call, left operand of binaries
  ExprNodePtr rhs;
};

class ExprAst {
 public:
  explicit ExprAst(ExprNodePtr root);

  const ExprNodePtr& root() const noexcept { return root_; }

  /// Throws EvalError on division by zero, log of a non-positive value, an
  /// undefined power, or a non-finite result.
  double operator()(double x) const;

  /// Fully parenthesized form that parses back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const ExprAst& lhs, const ExprAst& rhs);

 private:
  ExprNodePtr root_;
};

/// Throws ParseError carrying the byte offset of the offending input.
ExprAst parse_expression(std::string_view src);

ExprNodePtr make_literal(double v);
ExprNodePtr make_variable();
ExprNodePtr make_unary(ExprOp op, ExprNodePtr operand);
ExprNodePtr make_binary(ExprOp op, ExprNodePtr lhs, ExprNodePtr rhs);
ExprNodePtr make_call(ExprFunc f, ExprNodePtr arg);

std::string to_string(ExprFunc f);

/// Wraps a parsed expression as a SampledFunction labelled with the source text.
SampledFunction make_expression_function(std::string_view src);

}  // namespace qalab

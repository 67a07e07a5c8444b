#include "qalab/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "qalab/errors.hpp"

namespace qalab {

namespace {

constexpr std::array<std::pair<std::string_view, ExprFunc>, 5> kFunctions{{
    {"exp", ExprFunc::Exp},
    {"sin", ExprFunc::Sin},
    {"cos", ExprFunc::Cos},
    {"abs", ExprFunc::Abs},
    {"log", ExprFunc::Log},
}};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprNodePtr parse() {
    skip();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    ExprNodePtr e = expr();
    skip();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  ExprNodePtr expr() {
    ExprNodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(ExprOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(ExprOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprNodePtr term() {
    ExprNodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(ExprOp::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(ExprOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprNodePtr unary() {
    if (accept('-')) return make_unary(ExprOp::Neg, unary());
    return power();
  }

  ExprNodePtr power() {
    ExprNodePtr lhs = primary();
    while (accept('^')) lhs = make_binary(ExprOp::Pow, lhs, exponent());
    return lhs;
  }

  ExprNodePtr exponent() {
    if (accept('-')) return make_unary(ExprOp::Neg, exponent());
    return primary();
  }

  ExprNodePtr primary() {
    skip();
    if (pos_ == src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (accept('(')) {
      ExprNodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "x") return make_variable();
      for (const auto& [name, f] : kFunctions) {
        if (id == name) {
          expect('(');
          ExprNodePtr arg = expr();
          expect(')');
          return make_call(f, arg);
        }
      }
      throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  ExprNodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", mark);
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) throw ParseError("number out of range", start);
    return make_literal(v);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string(what) + " produced a non-finite value");
  return v;
}

double eval(const ExprNode& n, double x) {
  switch (n.op) {
    case ExprOp::Variable:
      return x;
    case ExprOp::Literal:
      return n.value;
    case ExprOp::Neg:
      return -eval(*n.lhs, x);
    case ExprOp::Add:
      return checked(eval(*n.lhs, x) + eval(*n.rhs, x), "addition");
    case ExprOp::Sub:
      return checked(eval(*n.lhs, x) - eval(*n.rhs, x), "subtraction");
    case ExprOp::Mul:
      return checked(eval(*n.lhs, x) * eval(*n.rhs, x), "multiplication");
    case ExprOp::Div: {
      const double d = eval(*n.rhs, x);
      if (d == 0.0) throw EvalError("division by zero");
      return checked(eval(*n.lhs, x) / d, "division");
    }
    case ExprOp::Pow: {
      const double b = eval(*n.lhs, x);
      const double e = eval(*n.rhs, x);
      if (b < 0.0 && e != std::trunc(e)) throw EvalError("negative base with non-integer exponent");
      if (b == 0.0 && e < 0.0) throw EvalError("zero raised to a negative power");
      return checked(std::pow(b, e), "power");
    }
    case ExprOp::Call: {
      const double a = eval(*n.lhs, x);
      switch (n.func) {
        case ExprFunc::Exp:
          return checked(std::exp(a), "exp");
        case ExprFunc::Sin:
          return std::sin(a);
        case ExprFunc::Cos:
          return std::cos(a);
        case ExprFunc::Abs:
          return std::abs(a);
        case ExprFunc::Log:
          if (!(a > 0.0)) throw EvalError("log of a non-positive value");
          return std::log(a);
      }
    }
  }
  throw EvalError("corrupt expression tree");
}

void print(const ExprNode& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.lhs, out);
    out += op;
    print(*n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case ExprOp::Variable:
      out += 'x';
      return;
    case ExprOp::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(n.value));
      out += n.value < 0.0 || std::signbit(n.value) ? std::string("(-") + buf + ")" : std::string(buf);
      return;
    }
    case ExprOp::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case ExprOp::Add:
      return binary("+");
    case ExprOp::Sub:
      return binary("-");
    case ExprOp::Mul:
      return binary("*");
    case ExprOp::Div:
      return binary("/");
    case ExprOp::Pow:
      return binary("^");
    case ExprOp::Call:
      out += to_string(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

bool equal(const ExprNodePtr& l, const ExprNodePtr& r) {
  if (!l || !r) return !l && !r;
  if (l->op != r->op) return false;
  switch (l->op) {
    case ExprOp::Variable:
      return true;
    case ExprOp::Literal:
      return l->value == r->value;
    case ExprOp::Call:
      return l->func == r->func && equal(l->lhs, r->lhs);
    default:
      return equal(l->lhs, r->lhs) && equal(l->rhs, r->rhs);
  }
}

}  // namespace

ExprNodePtr make_literal(double v) { return std::make_shared<const ExprNode>(ExprNode{ExprOp::Literal, v, ExprFunc::Exp, nullptr, nullptr}); }
ExprNodePtr make_variable() { return std::make_shared<const ExprNode>(ExprNode{ExprOp::Variable, 0.0, ExprFunc::Exp, nullptr, nullptr}); }

ExprNodePtr make_unary(ExprOp op, ExprNodePtr operand) {
  if (op != ExprOp::Neg) throw ArgumentError("not a unary operator");
  return std::make_shared<const ExprNode>(ExprNode{op, 0.0, ExprFunc::Exp, std::move(operand), nullptr});
}

ExprNodePtr make_binary(ExprOp op, ExprNodePtr lhs, ExprNodePtr rhs) {
  if (op != ExprOp::Add && op != ExprOp::Sub && op != ExprOp::Mul && op != ExprOp::Div && op != ExprOp::Pow)
    throw ArgumentError("not a binary operator");
  return std::make_shared<const ExprNode>(ExprNode{op, 0.0, ExprFunc::Exp, std::move(lhs), std::move(rhs)});
}

ExprNodePtr make_call(ExprFunc f, ExprNodePtr arg) {
  return std::make_shared<const ExprNode>(ExprNode{ExprOp::Call, 0.0, f, std::move(arg), nullptr});
}

std::string to_string(ExprFunc f) {
  for (const auto& [name, g] : kFunctions)
    if (g == f) return std::string(name);
  return "?";
}

ExprAst::ExprAst(ExprNodePtr root) : root_(std::move(root)) {
  if (!root_) throw ArgumentError("expression tree is empty");
}

double ExprAst::operator()(double x) const { return checked(eval(*root_, x), "expression"); }

std::string ExprAst::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool operator==(const ExprAst& lhs, const ExprAst& rhs) { return equal(lhs.root_, rhs.root_); }

ExprAst parse_expression(std::string_view src) { return ExprAst(Parser(src).parse()); }

SampledFunction make_expression_function(std::string_view src) {
  ExprAst ast = parse_expression(src);
  return SampledFunction{[ast](double x) { return ast(x); }, std::string(src), Smoothness::Continuous};
}

}  // namespace qalab

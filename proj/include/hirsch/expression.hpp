#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "hirsch/domain.hpp"
#include "hirsch/errors.hpp"

namespace hirsch {

/// Node of a closed-form expression in one variable `x`.
/// `Exp` and `Log` carry a constant base in `value`: exp(a, e) means a^e,
/// log(a, e) means log base a of e.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Op { Constant, Variable, Add, Sub, Mul, Div, Pow, Exp, Log };

  Op op;
  double value = 0.0;  // Constant payload, or the base for Exp/Log
  ExprPtr lhs;
  ExprPtr rhs;
};

namespace expr {

inline ExprPtr constant(double c) {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Op::Constant, c, nullptr, nullptr});
}
inline ExprPtr variable() {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Op::Variable, 0.0, nullptr, nullptr});
}
inline ExprPtr binary(ExprNode::Op op, ExprPtr a, ExprPtr b) {
  return std::make_shared<ExprNode>(ExprNode{op, 0.0, std::move(a), std::move(b)});
}
inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(ExprNode::Op::Add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(ExprNode::Op::Sub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(ExprNode::Op::Mul, std::move(a), std::move(b)); }
inline ExprPtr div(ExprPtr a, ExprPtr b) { return binary(ExprNode::Op::Div, std::move(a), std::move(b)); }
inline ExprPtr pow(ExprPtr a, ExprPtr b) { return binary(ExprNode::Op::Pow, std::move(a), std::move(b)); }
inline ExprPtr exp_base(double base, ExprPtr e) {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Op::Exp, base, std::move(e), nullptr});
}
inline ExprPtr log_base(double base, ExprPtr e) {
  return std::make_shared<ExprNode>(ExprNode{ExprNode::Op::Log, base, std::move(e), nullptr});
}

/// Value of a constant-only subtree, if it is one.
inline std::optional<double> fold_constant(const ExprPtr& n) {
  if (!n) return std::nullopt;
  switch (n->op) {
    case ExprNode::Op::Constant: return n->value;
    case ExprNode::Op::Variable: return std::nullopt;
    default: {
      auto a = fold_constant(n->lhs);
      if (!a) return std::nullopt;
      if (n->op == ExprNode::Op::Exp) return std::pow(n->value, *a);
      if (n->op == ExprNode::Op::Log) return std::log(*a) / std::log(n->value);
      auto b = fold_constant(n->rhs);
      if (!b) return std::nullopt;
      switch (n->op) {
        case ExprNode::Op::Add: return *a + *b;
        case ExprNode::Op::Sub: return *a - *b;
        case ExprNode::Op::Mul: return *a * *b;
        case ExprNode::Op::Div: return *a / *b;
        case ExprNode::Op::Pow: return std::pow(*a, *b);
        default: return std::nullopt;
      }
    }
  }
}

}  // namespace expr

inline double eval_expr(const ExprPtr& n, double x) {
  double v;
  switch (n->op) {
    case ExprNode::Op::Constant: v = n->value; break;
    case ExprNode::Op::Variable: v = x; break;
    case ExprNode::Op::Add: v = eval_expr(n->lhs, x) + eval_expr(n->rhs, x); break;
    case ExprNode::Op::Sub: v = eval_expr(n->lhs, x) - eval_expr(n->rhs, x); break;
    case ExprNode::Op::Mul: v = eval_expr(n->lhs, x) * eval_expr(n->rhs, x); break;
    case ExprNode::Op::Div: v = eval_expr(n->lhs, x) / eval_expr(n->rhs, x); break;
    case ExprNode::Op::Pow: {
      double base = eval_expr(n->lhs, x);
      double expo = eval_expr(n->rhs, x);
      if (base < 0.0)
        throw Error(ErrorKind::NonFinite, "real power with negative base is undefined here");
      v = std::pow(base, expo);
      break;
    }
    case ExprNode::Op::Exp: v = std::pow(n->value, eval_expr(n->lhs, x)); break;
    case ExprNode::Op::Log: v = std::log(eval_expr(n->lhs, x)) / std::log(n->value); break;
    default: v = std::nan("");
  }
  if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "expression diverges at x");
  return v;
}

/// Symbolic derivative. The result may still be non-finite at particular
/// points (e.g. d/dx x^0.5 at 0); callers fall back to finite differences.
inline ExprPtr differentiate(const ExprPtr& n) {
  using namespace expr;
  switch (n->op) {
    case ExprNode::Op::Constant: return constant(0.0);
    case ExprNode::Op::Variable: return constant(1.0);
    case ExprNode::Op::Add: return add(differentiate(n->lhs), differentiate(n->rhs));
    case ExprNode::Op::Sub: return sub(differentiate(n->lhs), differentiate(n->rhs));
    case ExprNode::Op::Mul:
      return add(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs)));
    case ExprNode::Op::Div:
      return div(sub(mul(differentiate(n->lhs), n->rhs), mul(n->lhs, differentiate(n->rhs))),
                 mul(n->rhs, n->rhs));
    case ExprNode::Op::Pow: {
      // u^c with constant exponent avoids the log(u) singularity at u = 0.
      if (auto c = expr::fold_constant(n->rhs)) {
        return mul(mul(constant(*c), pow(n->lhs, constant(*c - 1.0))), differentiate(n->lhs));
      }
      if (auto a = expr::fold_constant(n->lhs)) {
        // a^v: a^v * ln(a) * v'
        return mul(mul(pow(constant(*a), n->rhs), constant(std::log(*a))), differentiate(n->rhs));
      }
      // u^v * (v' ln u + v u'/u)
      return mul(pow(n->lhs, n->rhs),
                 add(mul(differentiate(n->rhs), log_base(std::exp(1.0), n->lhs)),
                     div(mul(n->rhs, differentiate(n->lhs)), n->lhs)));
    }
    case ExprNode::Op::Exp:
      return mul(mul(exp_base(n->value, n->lhs), constant(std::log(n->value))),
                 differentiate(n->lhs));
    case ExprNode::Op::Log:
      return div(differentiate(n->lhs), mul(n->lhs, constant(std::log(n->value))));
  }
  return expr::constant(0.0);
}

/// Shortest decimal form that round-trips through a double.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

namespace detail {
inline int precedence(ExprNode::Op op) {
  switch (op) {
    case ExprNode::Op::Add:
    case ExprNode::Op::Sub: return 1;
    case ExprNode::Op::Mul:
    case ExprNode::Op::Div: return 2;
    case ExprNode::Op::Pow: return 3;
    default: return 4;
  }
}
}  // namespace detail

inline std::string print_expr(const ExprPtr& n) {
  auto wrap = [](const ExprPtr& child, int parent_prec, bool strict) {
    std::string s = print_expr(child);
    int p = detail::precedence(child->op);
    if (p < parent_prec || (strict && p == parent_prec)) return "(" + s + ")";
    return s;
  };
  switch (n->op) {
    case ExprNode::Op::Constant: return format_double(n->value);
    case ExprNode::Op::Variable: return "x";
    case ExprNode::Op::Add: return wrap(n->lhs, 1, false) + " + " + wrap(n->rhs, 1, false);
    case ExprNode::Op::Sub: return wrap(n->lhs, 1, false) + " - " + wrap(n->rhs, 1, true);
    case ExprNode::Op::Mul: return wrap(n->lhs, 2, false) + "*" + wrap(n->rhs, 2, false);
    case ExprNode::Op::Div: return wrap(n->lhs, 2, false) + "/" + wrap(n->rhs, 2, true);
    case ExprNode::Op::Pow: return wrap(n->lhs, 4, false) + "^" + wrap(n->rhs, 4, false);
    case ExprNode::Op::Exp:
      return "exp(" + format_double(n->value) + ", " + print_expr(n->lhs) + ")";
    case ExprNode::Op::Log:
      return "log(" + format_double(n->value) + ", " + print_expr(n->lhs) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser
//
// expr     := term (('+' | '-') term)*
// term     := unary (('*' | '/') unary)*
// unary    := '-' unary | power
// power    := primary ('^' unary)?
// primary  := NUMBER | 'x' | '(' expr ')'
//           | 'log' '(' expr ',' expr ')' | 'exp' '(' expr ',' expr ')'
// spec     := expr ('on' interval ('u' interval)*)?
// interval := ('[' | '(') bound ',' bound (']' | ')')
// bound    := NUMBER | 'inf'
// ---------------------------------------------------------------------------

struct ParsedExpression {
  ExprPtr tree;
  std::optional<DomainSet> domain;  // from an `on ...` clause, if present
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  ParsedExpression parse() {
    ExprPtr tree = parse_expr();
    std::optional<DomainSet> dom;
    skip_ws();
    if (match_word("on")) {
      dom = parse_domain();
    }
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return {tree, dom};
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  bool match_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t after = pos_ + w.size();
    if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  double parse_number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || p == begin) fail("expected a number");
    pos_ = static_cast<std::size_t>(p - text_.data());
    return v;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (true) {
      if (consume('+')) {
        lhs = expr::add(lhs, parse_term());
      } else if (consume('-')) {
        lhs = expr::sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (true) {
      if (consume('*')) {
        lhs = expr::mul(lhs, parse_unary());
      } else if (consume('/')) {
        lhs = expr::div(lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (consume('-')) {
      skip_ws();
      bool literal = pos_ < text_.size() &&
                     (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
      ExprPtr operand = parse_unary();
      if (literal && operand->op == ExprNode::Op::Constant)
        throw Error(ErrorKind::NegativeConstant,
                    "negative constant " + format_double(-operand->value) + "; range must be R+");
      return expr::sub(expr::constant(0.0), operand);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (consume('^')) return expr::pow(base, parse_unary());
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return expr::constant(parse_number());
    if (consume('(')) {
      ExprPtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (match_word("log")) return parse_based(true);
    if (match_word("exp")) return parse_based(false);
    if (match_word("x")) return expr::variable();
    fail("expected a number, 'x', '(', 'log(' or 'exp('");
  }

  ExprPtr parse_based(bool is_log) {
    expect('(');
    ExprPtr base_expr = parse_expr();
    expect(',');
    ExprPtr arg = parse_expr();
    expect(')');
    auto base = expr::fold_constant(base_expr);
    if (!base) fail(is_log ? "log base must be a constant" : "exp base must be a constant");
    if (is_log) {
      if (!(*base > 1.0)) fail("log base must be > 1");
      return expr::log_base(*base, arg);
    }
    if (!(*base > 0.0)) fail("exp base must be > 0");
    return expr::exp_base(*base, arg);
  }

  double parse_bound() {
    skip_ws();
    if (match_word("inf") || match_word("infinity")) return kInf;
    if (consume('+')) {
      if (match_word("inf") || match_word("infinity")) return kInf;
      fail("expected 'inf'");
    }
    double v = parse_number();
    if (v < 0) fail("domain bounds must be >= 0");
    return v;
  }

  DomainSet parse_domain() {
    DomainSet dom;
    while (true) {
      Interval iv;
      skip_ws();
      if (consume('[')) {
        iv.lo_closed = true;
      } else if (consume('(')) {
        iv.lo_closed = false;
      } else {
        fail("expected '[' or '(' to open a domain interval");
      }
      iv.lo = parse_bound();
      expect(',');
      iv.hi = parse_bound();
      skip_ws();
      if (consume(']')) {
        iv.hi_closed = true;
      } else if (consume(')')) {
        iv.hi_closed = false;
      } else {
        fail("expected ']' or ')' to close a domain interval");
      }
      if (!std::isfinite(iv.hi)) iv.hi_closed = false;
      iv.validate();
      dom.intervals.push_back(iv);
      if (!match_word("u") && !match_word("U")) break;
    }
    dom.validate();
    return dom;
  }
};

}  // namespace detail

inline ParsedExpression parse_expression_text(std::string_view text) {
  return detail::ExpressionParser(text).parse();
}

}  // namespace hirsch

#include "spraylab/exprdsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "spraylab/errors.hpp"

namespace spraylab::dsl {

namespace {

NodePtr make(NodeKind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

NodePtr lit(double value) {
  auto n = make(NodeKind::literal);
  const_cast<Node&>(*n).value = value;
  return n;
}

NodePtr yvar(int index) {
  auto n = make(NodeKind::var_y);
  const_cast<Node&>(*n).index = index;
  return n;
}

NodePtr xvar(int index) {
  auto n = make(NodeKind::var_x);
  const_cast<Node&>(*n).index = index;
  return n;
}

NodePtr neg(NodePtr a) { return make(NodeKind::neg, std::move(a)); }
NodePtr add(NodePtr a, NodePtr b) { return make(NodeKind::add, std::move(a), std::move(b)); }
NodePtr sub(NodePtr a, NodePtr b) { return make(NodeKind::sub, std::move(a), std::move(b)); }
NodePtr mul(NodePtr a, NodePtr b) { return make(NodeKind::mul, std::move(a), std::move(b)); }
NodePtr div(NodePtr a, NodePtr b) { return make(NodeKind::div, std::move(a), std::move(b)); }

NodePtr ipow(NodePtr a, int exponent) {
  auto n = make(NodeKind::pow, std::move(a));
  const_cast<Node&>(*n).exponent = exponent;
  return n;
}

NodePtr sqrt_fn(NodePtr a) { return make(NodeKind::sqrt_fn, std::move(a)); }
NodePtr abs_fn(NodePtr a) { return make(NodeKind::abs_fn, std::move(a)); }
NodePtr norm_fn() { return make(NodeKind::norm_fn); }
NodePtr sin_fn(NodePtr a) { return make(NodeKind::sin_fn, std::move(a)); }
NodePtr cos_fn(NodePtr a) { return make(NodeKind::cos_fn, std::move(a)); }
NodePtr tan_fn(NodePtr a) { return make(NodeKind::tan_fn, std::move(a)); }

namespace {

enum class TokenKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::size_t offset = 0;
  double number = 0.0;
  bool number_is_integer = false;
  std::string ident;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) {
      t.kind = TokenKind::end;
      return t;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; t.kind = TokenKind::plus; return t;
      case '-': ++pos_; t.kind = TokenKind::minus; return t;
      case '*': ++pos_; t.kind = TokenKind::star; return t;
      case '/': ++pos_; t.kind = TokenKind::slash; return t;
      case '^': ++pos_; t.kind = TokenKind::caret; return t;
      case '(': ++pos_; t.kind = TokenKind::lparen; return t;
      case ')': ++pos_; t.kind = TokenKind::rparen; return t;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(t);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      t.kind = TokenKind::ident;
      t.ident = src_.substr(start, pos_ - start);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

private:
  Token lex_number(Token t) {
    std::size_t start = pos_;
    bool has_dot = false;
    bool has_exp = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !has_dot && !has_exp) {
        has_dot = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && !has_exp && pos_ + 1 < src_.size() &&
                 (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                  ((src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') && pos_ + 2 < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_ + 2]))))) {
        has_exp = true;
        ++pos_;
        if (src_[pos_] == '+' || src_[pos_] == '-') ++pos_;
      } else {
        break;
      }
    }
    const std::string text = src_.substr(start, pos_ - start);
    if (text == ".") throw ParseError("malformed number", start);
    t.kind = TokenKind::number;
    t.number = std::strtod(text.c_str(), nullptr);
    t.number_is_integer = !has_dot && !has_exp;
    return t;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  Parser(const std::string& src, int y_dim, int x_dim, bool allow_trig)
      : lexer_(src), y_dim_(y_dim), x_dim_(x_dim), allow_trig_(allow_trig) {
    advance();
  }

  NodePtr run() {
    NodePtr e = parse_expr();
    if (cur_.kind != TokenKind::end) {
      throw ParseError("unexpected trailing input", cur_.offset);
    }
    return e;
  }

private:
  void advance() { cur_ = lexer_.next(); }

  bool accept(TokenKind k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (cur_.kind == TokenKind::plus || cur_.kind == TokenKind::minus) {
      const bool is_add = cur_.kind == TokenKind::plus;
      advance();
      NodePtr right = parse_term();
      left = is_add ? add(left, right) : sub(left, right);
    }
    return left;
  }

  NodePtr parse_term() {
    NodePtr left = parse_unary();
    while (cur_.kind == TokenKind::star || cur_.kind == TokenKind::slash) {
      const bool is_mul = cur_.kind == TokenKind::star;
      advance();
      NodePtr right = parse_unary();
      left = is_mul ? mul(left, right) : div(left, right);
    }
    return left;
  }

  NodePtr parse_unary() {
    if (accept(TokenKind::minus)) return neg(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (cur_.kind == TokenKind::caret) {
      advance();
      if (cur_.kind != TokenKind::number || !cur_.number_is_integer) {
        throw ParseError("exponent must be a nonnegative integer literal", cur_.offset);
      }
      const int exponent = static_cast<int>(cur_.number);
      advance();
      return ipow(base, exponent);
    }
    return base;
  }

  NodePtr parse_primary() {
    if (cur_.kind == TokenKind::number) {
      NodePtr n = lit(cur_.number);
      advance();
      return n;
    }
    if (accept(TokenKind::lparen)) {
      NodePtr inner = parse_expr();
      if (!accept(TokenKind::rparen)) {
        throw ParseError("expected ')'", cur_.offset);
      }
      return inner;
    }
    if (cur_.kind == TokenKind::ident) {
      const Token tok = cur_;
      advance();
      if (cur_.kind == TokenKind::lparen) return parse_call(tok);
      return parse_variable(tok);
    }
    throw ParseError("expected a number, variable, function or '('", cur_.offset);
  }

  NodePtr parse_call(const Token& name) {
    advance();  // consume '('
    if (name.ident == "norm") {
      if (!accept(TokenKind::rparen)) {
        throw ParseError("norm() takes no argument", cur_.offset);
      }
      return norm_fn();
    }
    NodePtr (*wrap)(NodePtr) = nullptr;
    if (name.ident == "sqrt") wrap = sqrt_fn;
    else if (name.ident == "abs") wrap = abs_fn;
    else if (allow_trig_ && name.ident == "sin") wrap = sin_fn;
    else if (allow_trig_ && name.ident == "cos") wrap = cos_fn;
    else if (allow_trig_ && name.ident == "tan") wrap = tan_fn;
    if (wrap == nullptr) {
      throw ParseError("unknown identifier '" + name.ident + "'", name.offset);
    }
    NodePtr arg = parse_expr();
    if (!accept(TokenKind::rparen)) {
      throw ParseError("expected ')'", cur_.offset);
    }
    return wrap(arg);
  }

  NodePtr parse_variable(const Token& tok) {
    const std::string& s = tok.ident;
    const bool is_y = s.size() >= 2 && s[0] == 'y';
    const bool is_x = s.size() >= 2 && s[0] == 'x';
    if (is_y || is_x) {
      bool digits = true;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
      }
      if (digits) {
        const int index = std::atoi(s.c_str() + 1);
        if (is_y) {
          if (index < 1 || index > y_dim_) {
            throw ParseError("variable index out of range: " + s, tok.offset);
          }
          return yvar(index);
        }
        if (x_dim_ == 0) {
          throw ParseError("x-variables are not available here: " + s, tok.offset);
        }
        if (index < 1 || index > x_dim_) {
          throw ParseError("variable index out of range: " + s, tok.offset);
        }
        return xvar(index);
      }
    }
    throw ParseError("unknown identifier '" + s + "'", tok.offset);
  }

  Lexer lexer_;
  Token cur_;
  int y_dim_;
  int x_dim_;
  bool allow_trig_;
};

double eval_node(const Node& n, const Eigen::VectorXd* x, const Eigen::VectorXd& y);

double eval_checked_div(const Node& n, const Eigen::VectorXd* x, const Eigen::VectorXd& y) {
  const double denom = eval_node(*n.b, x, y);
  if (denom == 0.0) {
    throw DomainError("division by zero", pretty_print(std::make_shared<Node>(n)));
  }
  return eval_node(*n.a, x, y) / denom;
}

double eval_node(const Node& n, const Eigen::VectorXd* x, const Eigen::VectorXd& y) {
  switch (n.kind) {
    case NodeKind::literal: return n.value;
    case NodeKind::var_y: return y[n.index - 1];
    case NodeKind::var_x: return (*x)[n.index - 1];
    case NodeKind::neg: return -eval_node(*n.a, x, y);
    case NodeKind::add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case NodeKind::sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case NodeKind::mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case NodeKind::div: return eval_checked_div(n, x, y);
    case NodeKind::pow: {
      const double base = eval_node(*n.a, x, y);
      double out = 1.0;
      for (int i = 0; i < n.exponent; ++i) out *= base;
      return out;
    }
    case NodeKind::sqrt_fn: {
      const double v = eval_node(*n.a, x, y);
      if (v < 0.0) {
        throw DomainError("sqrt of a negative value", pretty_print(std::make_shared<Node>(n)));
      }
      return std::sqrt(v);
    }
    case NodeKind::abs_fn: return std::abs(eval_node(*n.a, x, y));
    case NodeKind::norm_fn: {
      // sqrt(sum y_i^2) accumulated in index order; pinned so independent
      // evaluators can reproduce results bit for bit.
      double sum = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) sum += y[i] * y[i];
      return std::sqrt(sum);
    }
    case NodeKind::sin_fn: return std::sin(eval_node(*n.a, x, y));
    case NodeKind::cos_fn: return std::cos(eval_node(*n.a, x, y));
    case NodeKind::tan_fn: return std::tan(eval_node(*n.a, x, y));
  }
  throw DomainError("corrupt expression node", "?");
}

int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

std::string format_double(double v) {
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

void print_node(const Node& n, std::string& out) {
  const int p = precedence(n);
  auto child = [&out](const Node& c, bool need_parens) {
    if (need_parens) out += '(';
    print_node(c, out);
    if (need_parens) out += ')';
  };
  switch (n.kind) {
    case NodeKind::literal: out += format_double(n.value); return;
    case NodeKind::var_y: out += "y" + std::to_string(n.index); return;
    case NodeKind::var_x: out += "x" + std::to_string(n.index); return;
    case NodeKind::neg:
      out += '-';
      child(*n.a, precedence(*n.a) < p);
      return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      child(*n.a, precedence(*n.a) < p);
      out += n.kind == NodeKind::add   ? '+'
             : n.kind == NodeKind::sub ? '-'
             : n.kind == NodeKind::mul ? '*'
                                       : '/';
      child(*n.b, precedence(*n.b) <= p);
      return;
    }
    case NodeKind::pow:
      child(*n.a, precedence(*n.a) < 5);
      out += '^' + std::to_string(n.exponent);
      return;
    case NodeKind::sqrt_fn:
    case NodeKind::abs_fn:
    case NodeKind::sin_fn:
    case NodeKind::cos_fn:
    case NodeKind::tan_fn: {
      out += n.kind == NodeKind::sqrt_fn  ? "sqrt"
             : n.kind == NodeKind::abs_fn ? "abs"
             : n.kind == NodeKind::sin_fn ? "sin"
             : n.kind == NodeKind::cos_fn ? "cos"
                                          : "tan";
      out += '(';
      print_node(*n.a, out);
      out += ')';
      return;
    }
    case NodeKind::norm_fn: out += "norm()"; return;
  }
}

}  // namespace

Expr parse(const std::string& src, int q) {
  if (src.empty()) throw ParseError("empty expression", 0);
  if (q < 0) throw InvalidInputError("parse: dimension must be nonnegative");
  Parser parser(src, q, 0, false);
  return Expr{parser.run(), q, 0};
}

Expr parse_chart(const std::string& src, int d) {
  if (src.empty()) throw ParseError("empty expression", 0);
  if (d <= 0) throw InvalidInputError("parse_chart: dimension must be positive");
  Parser parser(src, d, d, true);
  return Expr{parser.run(), d, d};
}

double eval(const Expr& e, const Eigen::VectorXd& y) {
  if (e.x_dim != 0) throw InvalidInputError("eval: chart expression needs x values");
  if (y.size() != e.y_dim) throw InvalidInputError("eval: y has wrong dimension");
  return eval_node(*e.root, nullptr, y);
}

double eval(const Expr& e, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != e.x_dim || y.size() != e.y_dim) {
    throw InvalidInputError("eval: state has wrong dimension");
  }
  return eval_node(*e.root, &x, y);
}

std::string pretty_print(const NodePtr& node) {
  std::string out;
  print_node(*node, out);
  return out;
}

std::string pretty_print(const Expr& e) { return pretty_print(e.root); }

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->value != b->value || a->index != b->index ||
      a->exponent != b->exponent) {
    return false;
  }
  return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
}

}  // namespace spraylab::dsl

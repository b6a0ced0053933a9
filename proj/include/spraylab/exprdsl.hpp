#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

namespace spraylab::dsl {

enum class NodeKind {
  literal,
  var_y,
  var_x,
  neg,
  add,
  sub,
  mul,
  div,
  pow,      // integer exponents only
  sqrt_fn,
  abs_fn,
  norm_fn,  // Euclidean norm of the full y-vector, no argument
  sin_fn,
  cos_fn,
  tan_fn,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node; expressions are shareable across threads.
struct Node {
  NodeKind kind;
  double value = 0.0;  // literal
  int index = 0;       // var_y / var_x, 1-based
  int exponent = 0;    // pow
  NodePtr a;
  NodePtr b;
};

NodePtr lit(double value);
NodePtr yvar(int index);
NodePtr xvar(int index);
NodePtr neg(NodePtr a);
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr ipow(NodePtr a, int exponent);
NodePtr sqrt_fn(NodePtr a);
NodePtr abs_fn(NodePtr a);
NodePtr norm_fn();
NodePtr sin_fn(NodePtr a);
NodePtr cos_fn(NodePtr a);
NodePtr tan_fn(NodePtr a);

/// A parsed expression together with the variable ranges it was checked
/// against. `x_dim == 0` means plain y-expressions (spray field components);
/// chart expressions carry x1..xd and y1..yd.
struct Expr {
  NodePtr root;
  int y_dim = 0;
  int x_dim = 0;
};

/// Parses an expression in variables y1..yq. Grammar precedence, tightest
/// first: ^, unary -, * /, + -. The operators + - * / are left-associative;
/// the exponent of ^ must be a nonnegative integer literal. Functions:
/// sqrt(e), abs(e), norm(). Throws ParseError with a byte offset.
Expr parse(const std::string& src, int q);

/// Chart variant: variables x1..xd and y1..yd, and additionally sin, cos,
/// tan (chart coefficients need trigonometry in the x-variables; spray field
/// components do not get these, keeping 2-homogeneity violations plain).
Expr parse_chart(const std::string& src, int d);

/// Evaluates a y-expression. Throws DomainError on division by zero or
/// sqrt of a negative value.
double eval(const Expr& e, const Eigen::VectorXd& y);

/// Evaluates a chart expression at (x, y).
double eval(const Expr& e, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Canonical text form; parse(pretty_print(e)) reproduces the tree, and
/// pretty_print . parse is a fixed point on strings.
std::string pretty_print(const Expr& e);
std::string pretty_print(const NodePtr& node);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

}  // namespace spraylab::dsl

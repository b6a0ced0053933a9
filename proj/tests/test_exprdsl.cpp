#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "spraylab/errors.hpp"
#include "spraylab/exprdsl.hpp"
#include "spraylab/rng.hpp"

using namespace spraylab;
using namespace spraylab::dsl;

namespace {

Eigen::VectorXd yvec(std::initializer_list<double> values) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) y[i++] = v;
  return y;
}

// Reference evaluator used as the oracle: independent recursion over the
// tree with the same pinned leaf semantics.
double oracle_eval(const Node& n, const Eigen::VectorXd& y) {
  switch (n.kind) {
    case NodeKind::literal: return n.value;
    case NodeKind::var_y: return y[n.index - 1];
    case NodeKind::var_x: throw std::logic_error("no x vars in this test");
    case NodeKind::neg: return -oracle_eval(*n.a, y);
    case NodeKind::add: return oracle_eval(*n.a, y) + oracle_eval(*n.b, y);
    case NodeKind::sub: return oracle_eval(*n.a, y) - oracle_eval(*n.b, y);
    case NodeKind::mul: return oracle_eval(*n.a, y) * oracle_eval(*n.b, y);
    case NodeKind::div: {
      const double d = oracle_eval(*n.b, y);
      if (d == 0.0) throw DomainError("division by zero", "oracle");
      return oracle_eval(*n.a, y) / d;
    }
    case NodeKind::pow: {
      const double base = oracle_eval(*n.a, y);
      double out = 1.0;
      for (int i = 0; i < n.exponent; ++i) out *= base;
      return out;
    }
    case NodeKind::sqrt_fn: {
      const double v = oracle_eval(*n.a, y);
      if (v < 0.0) throw DomainError("sqrt of a negative value", "oracle");
      return std::sqrt(v);
    }
    case NodeKind::abs_fn: return std::abs(oracle_eval(*n.a, y));
    case NodeKind::norm_fn: {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) sum += y[i] * y[i];
      return std::sqrt(sum);
    }
    default: throw std::logic_error("unsupported node in oracle");
  }
}

// Random AST over y1..yq without negative literals (the parser never
// produces those; unary minus covers the sign).
NodePtr random_ast(Rng& rng, int q, int depth) {
  const double roll = rng.uniform();
  if (depth <= 0 || roll < 0.30) {
    if (rng.uniform() < 0.5) return lit(std::round(rng.uniform(0.0, 8.0) * 4.0) / 4.0);
    return yvar(1 + static_cast<int>(rng.uniform() * q));
  }
  if (roll < 0.38) return neg(random_ast(rng, q, depth - 1));
  if (roll < 0.48) return sqrt_fn(abs_fn(random_ast(rng, q, depth - 1)));
  if (roll < 0.56) return abs_fn(random_ast(rng, q, depth - 1));
  if (roll < 0.62) return norm_fn();
  if (roll < 0.70) return ipow(random_ast(rng, q, depth - 1),
                               static_cast<int>(rng.uniform() * 5.0));
  const double op = rng.uniform();
  NodePtr a = random_ast(rng, q, depth - 1);
  NodePtr b = random_ast(rng, q, depth - 1);
  if (op < 0.3) return add(a, b);
  if (op < 0.6) return sub(a, b);
  if (op < 0.9) return mul(a, b);
  return div(a, b);
}

}  // namespace

TEST_CASE("parse builds the documented tree shapes") {
  {
    const Expr e = parse("norm()*y1", 2);
    REQUIRE(e.root->kind == NodeKind::mul);
    CHECK(e.root->a->kind == NodeKind::norm_fn);
    CHECK(e.root->b->kind == NodeKind::var_y);
    CHECK(e.root->b->index == 1);
  }
  {
    // precedence: ^ before *, * before -
    const Expr e = parse("y1^2 - 2*y1*y2", 2);
    REQUIRE(e.root->kind == NodeKind::sub);
    CHECK(e.root->a->kind == NodeKind::pow);
    CHECK(e.root->a->exponent == 2);
    CHECK(e.root->b->kind == NodeKind::mul);
  }
  {
    // unary minus binds tighter than *: -y1*y2 = (-y1)*y2
    const Expr e = parse("-y1*y2", 2);
    REQUIRE(e.root->kind == NodeKind::mul);
    CHECK(e.root->a->kind == NodeKind::neg);
  }
  {
    // ^ binds tighter than unary minus: -y1^2 = -(y1^2)
    const Expr e = parse("-y1^2", 2);
    REQUIRE(e.root->kind == NodeKind::neg);
    CHECK(e.root->a->kind == NodeKind::pow);
  }
  {
    // left associativity: y1-y2-y1 = (y1-y2)-y1
    const Expr e = parse("y1-y2-y1", 2);
    REQUIRE(e.root->kind == NodeKind::sub);
    CHECK(e.root->a->kind == NodeKind::sub);
  }
}

TEST_CASE("parse errors: syntax, unknown identifier, out-of-range variable") {
  CHECK_THROWS_AS(parse("", 2), ParseError);
  CHECK_THROWS_AS(parse("y3", 2), ParseError);           // index out of range
  CHECK_THROWS_AS(parse("foo(y1)", 2), ParseError);      // unknown identifier
  CHECK_THROWS_AS(parse("z1+1", 2), ParseError);         // unknown identifier
  CHECK_THROWS_AS(parse("1 + * 2", 2), ParseError);      // syntax
  CHECK_THROWS_AS(parse("(y1", 2), ParseError);          // unbalanced paren
  CHECK_THROWS_AS(parse("y1^-2", 2), ParseError);        // exponent must be a literal
  CHECK_THROWS_AS(parse("y1^2.5", 2), ParseError);       // exponent must be an integer
  CHECK_THROWS_AS(parse("y1 y2", 2), ParseError);        // trailing input
  CHECK_THROWS_AS(parse("x1", 2), ParseError);           // x vars only in charts

  try {
    parse("1 + * 2", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 4);
  }
  try {
    parse("y3", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 0);
    CHECK(std::string(err.what()).find("out of range") != std::string::npos);
  }
}

TEST_CASE("eval matches the worked examples") {
  CHECK(eval(parse("norm()*y1", 2), yvec({3, 4})) == 15.0);
  CHECK(eval(parse("y1^2 - 2*y1*y2", 2), yvec({1, 1})) == -1.0);
  CHECK(eval(parse("y1^0", 2), yvec({0, 1})) == 1.0);
  CHECK(eval(parse("2^3", 1), yvec({0.0})) == 8.0);
  CHECK(eval(parse("sqrt(abs(-4))", 1), yvec({0.0})) == 2.0);
}

TEST_CASE("domain errors carry the offending subexpression") {
  CHECK_THROWS_AS(eval(parse("1/y1", 2), yvec({0, 1})), DomainError);
  CHECK_THROWS_AS(eval(parse("sqrt(y1)", 2), yvec({-1, 0})), DomainError);
  try {
    eval(parse("1/(y1-y2)", 2), yvec({1, 1}));
    FAIL("expected DomainError");
  } catch (const DomainError& err) {
    CHECK(err.subexpression() == "1/(y1-y2)");
  }
}

TEST_CASE("chart expressions admit x-variables and trigonometry") {
  const Expr e = parse_chart("-0.5*sin(x1)*cos(x1)*y2^2", 2);
  const double v = eval(e, yvec({M_PI / 2, 0.0}), yvec({0.0, 1.0}));
  CHECK(v == doctest::Approx(-0.5 * std::sin(M_PI / 2) * std::cos(M_PI / 2)).epsilon(1e-15));
  CHECK_THROWS_AS(parse("sin(y1)", 2), ParseError);  // no trig outside charts
  CHECK_THROWS_AS(parse_chart("x3", 2), ParseError);
}

TEST_CASE("pretty-print is a fixed point through parse") {
  const std::vector<std::string> sources = {
      "norm()*y1",  "y1^2-2*y1*y2", "-y1^2",        "-(y1+y2)",      "y1-(y2-y1)",
      "y1/y2/y1",   "(-y1)^3",      "sqrt(abs(y1))", "1.25*norm()",  "y1*(y2+1)",
      "--y2",       "y1^0",         "2/(y1*y2)",     "abs(-y2)^2",
  };
  for (const auto& src : sources) {
    const std::string once = pretty_print(parse(src, 2));
    const std::string twice = pretty_print(parse(once, 2));
    CHECK(once == twice);
  }
}

TEST_CASE("randomized round-trips agree with the reference evaluator") {
  Rng rng(kDefaultSeed);
  int executed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = 1 + static_cast<int>(rng.uniform() * 3.0);
    const NodePtr ast = random_ast(rng, q, 5);
    const std::string printed = pretty_print(ast);

    const Expr reparsed = parse(printed, q);
    REQUIRE(structurally_equal(ast, reparsed.root));
    CHECK(pretty_print(reparsed) == printed);

    Eigen::VectorXd y(q);
    for (int i = 0; i < q; ++i) y[i] = rng.uniform(-2.0, 2.0);

    bool oracle_threw = false;
    double expected = 0.0;
    try {
      expected = oracle_eval(*ast, y);
    } catch (const DomainError&) {
      oracle_threw = true;
    }
    bool lib_threw = false;
    double got = 0.0;
    try {
      got = eval(reparsed, y);
    } catch (const DomainError&) {
      lib_threw = true;
    }
    REQUIRE(oracle_threw == lib_threw);
    if (!oracle_threw) {
      const bool same = got == expected || (std::isnan(got) && std::isnan(expected));
      CHECK(same);
      ++executed;
    }
  }
  CHECK(executed > 500);  // most random expressions evaluate cleanly
}

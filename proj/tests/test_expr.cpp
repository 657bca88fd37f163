#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qgauge/expr.hpp>
#include <qgauge/rng.hpp>

#include "support.hpp"

using namespace qgauge;

namespace {

ComplexPoint pt(std::initializer_list<double> xs) {
  Eigen::VectorXd xy(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double v : xs) xy[i++] = v;
  return ComplexPoint(xy);
}

}  // namespace

TEST_CASE("parse builds the documented egg AST") {
  const ExprPtr ast = parse("abs2(z1)^2 + abs2(z2) - 1", 2);
  const ExprPtr expected = ExprNode::binary(
      ExprNode::Tag::Sub,
      ExprNode::binary(ExprNode::Tag::Add,
                       ExprNode::pow(ExprNode::var(VarKind::Abs2, 1), 2),
                       ExprNode::var(VarKind::Abs2, 2)),
      ExprNode::constant(1.0));
  CHECK(expr_equal(ast, expected));
}

TEST_CASE("documented parse errors with byte positions") {
  SUBCASE("bare complex variable") {
    try {
      parse("z1 + 1", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::BareComplexVariable);
      CHECK(e.position() == 0);
    }
  }
  SUBCASE("index out of range") {
    try {
      parse("abs2(z3) - 1", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::IndexOutOfRange);
      CHECK(e.position() == 5);
    }
  }
  SUBCASE("unknown identifier") {
    try {
      parse("foo(z1) + 1", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::UnknownIdentifier);
      CHECK(e.position() == 0);
    }
  }
  SUBCASE("syntax error at a dangling operator") {
    try {
      parse("abs2(z1) +", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
      CHECK(e.position() == 10);
    }
  }
  SUBCASE("non-integer exponent") {
    try {
      parse("abs2(z1)^2.5", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
      CHECK(e.position() == 9);
    }
  }
  SUBCASE("complex variable inside exp is still bare") {
    try {
      parse("exp(z1)", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::BareComplexVariable);
      CHECK(e.position() == 4);
    }
  }
  SUBCASE("abs2 of a non-variable is a syntax error") {
    try {
      parse("abs2(z1 + z2)", 2);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
    }
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse("", 2), ParseError);
  }
  SUBCASE("nesting depth is capped at 256") {
    const auto nested = [](int levels) {
      std::string s;
      for (int i = 0; i < levels; ++i) s += "(";
      s += "1";
      for (int i = 0; i < levels; ++i) s += ")";
      return s;
    };
    CHECK(parse(nested(250), 1)->tag == ExprNode::Tag::Const);
    try {
      parse(nested(300), 1);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
    }
  }
}

TEST_CASE("print_canonical worked examples") {
  const ExprPtr a = ExprNode::binary(ExprNode::Tag::Sub,
                                     ExprNode::var(VarKind::Abs2, 1),
                                     ExprNode::constant(1.0));
  CHECK(print_canonical(a) == "(abs2(z1) - 1)");

  const ExprPtr b = ExprNode::pow(ExprNode::var(VarKind::Abs2, 2), 3);
  CHECK(print_canonical(b) == "(abs2(z2) ^ 3)");

  // the egg expression round-trips structurally
  const ExprPtr egg = parse("abs2(z1)^2 + abs2(z2) - 1", 2);
  CHECK(expr_equal(parse(print_canonical(egg), 2), egg));
}

TEST_CASE("round-trip law on random ASTs") {
  Rng rng(424242);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const ExprPtr ast = qgauge::testing::random_ast(rng, n, 5);
    const std::string text = print_canonical(ast);
    const ExprPtr back = parse(text, n);
    CHECK(expr_equal(ast, back));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("compiled evaluation worked examples") {
  SUBCASE("ball value at (0.3+0.4i, 0)") {
    const auto f = compile(parse("abs2(z1) + abs2(z2) - 1", 2), 2);
    CHECK((*f)(pt({0.3, 0.4, 0.0, 0.0})) ==
          doctest::Approx(-0.75).epsilon(1e-15));
  }
  SUBCASE("egg boundary point (1,0)") {
    const auto f = compile(parse("abs2(z1)^2 + abs2(z2) - 1", 2), 2);
    CHECK((*f)(pt({1.0, 0.0, 0.0, 0.0})) == 0.0);
  }
  SUBCASE("re(z1) jet at 2+3i") {
    const auto f = compile(parse("re(z1)", 1), 1);
    const Jet2 jet = f->jet(pt({2.0, 3.0}), 1);
    CHECK(jet.value == 2.0);
    CHECK(jet.grad[0] == 1.0);
    CHECK(jet.grad[1] == 0.0);
  }
  SUBCASE("plain evaluation equals the order-0 jet exactly") {
    const auto f = compile(
        parse("exp(abs2(z1)) + sqrt(1 + abs2(z2)) / (2 + re(z1))", 2), 2);
    Rng rng(9);
    for (int it = 0; it < 100; ++it) {
      const ComplexPoint z = qgauge::testing::random_point(rng, 2, 0.1, 1.5);
      CHECK((*f)(z) == f->jet(z, 0).value);
    }
  }
}

TEST_CASE("compiled jets agree with finite differences") {
  const auto f = compile(
      parse("abs2(z1)^2 + 0.5*abs2(z1)*abs2(z2) + exp(re(z2)) - 2", 2), 2);
  Rng rng(500);
  for (int it = 0; it < 50; ++it) {
    const ComplexPoint z = qgauge::testing::random_point(rng, 2, 0.2, 1.2);
    const Jet2 jet = f->jet(z, 2);
    const Eigen::VectorXd g_fd = qgauge::testing::fd_gradient(*f, z, 1e-5);
    CHECK((jet.grad - g_fd).norm() <= 1e-6 * std::max(1.0, jet.grad.norm()));
    const Eigen::MatrixXd h_fd = qgauge::testing::fd_hessian(*f, z, 1e-4);
    CHECK((jet.hess - h_fd).norm() <= 1e-5 * std::max(1.0, jet.hess.norm()));
  }
}

TEST_CASE("division and log errors surface as EvaluationError") {
  const auto f = compile(parse("log(re(z1))", 1), 1);
  try {
    (*f)(pt({-2.0, 0.0}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EvaluationError);
  }
  const auto g = compile(parse("1 / abs2(z1)", 1), 1);
  CHECK(std::isinf((*g)(pt({0.0, 0.0}))));  // plain IEEE division
}

TEST_CASE("negative and negated exponents parse") {
  const ExprPtr a = parse("abs2(z1)^-2", 1);
  CHECK(a->tag == ExprNode::Tag::Pow);
  CHECK(a->exponent == -2);
  // unary minus binds below ^: -x^2 == -(x^2)
  const ExprPtr b = parse("-abs2(z1)^2", 1);
  CHECK(b->tag == ExprNode::Tag::Sub);
  CHECK(b->lhs->tag == ExprNode::Tag::Const);
  CHECK(b->rhs->tag == ExprNode::Tag::Pow);
  // folded numeric literal
  const ExprPtr c = parse("-1.5", 1);
  CHECK(c->tag == ExprNode::Tag::Const);
  CHECK(c->value == -1.5);
}

TEST_CASE("compile validates hand-built trees") {
  const ExprPtr bad = ExprNode::var(VarKind::Abs2, 3);
  try {
    compile(bad, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("format_double round-trips through parse") {
  Rng rng(8);
  for (int it = 0; it < 200; ++it) {
    const double v = std::exp(rng.uniform(-20.0, 20.0)) *
                     (rng.uniform() < 0.5 ? -1.0 : 1.0);
    const ExprPtr ast = ExprNode::constant(v);
    const ExprPtr back = parse(print_canonical(ast), 1);
    REQUIRE(back->tag == ExprNode::Tag::Const);
    CHECK(back->value == v);
  }
}

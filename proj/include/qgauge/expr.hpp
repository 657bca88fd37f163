#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <qgauge/calculus.hpp>

namespace qgauge {

// Textual defining functions. The language is real-valued by construction:
// the complex coordinates enter only through the atoms abs2(zj), re(zj),
// im(zj), so a parsed expression can never leak an imaginary part.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | postfix
//   postfix := primary ('^' ['-'] integer)*
//   primary := number | '(' expr ')'
//            | ('abs2' | 're' | 'im') '(' zvar ')'
//            | ('exp' | 'log' | 'sqrt') '(' expr ')'
//
// A bare zvar token (z1, z2, ...) anywhere else is rejected. Nesting depth
// is capped at 256.

enum class VarKind { Abs2, Re, Im };
enum class CallFn { Exp, Log, Sqrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Tag { Const, Var, Add, Sub, Mul, Div, Pow, Call } tag;

  double value = 0.0;            // Const
  VarKind var_kind = VarKind::Abs2;
  int var_index = 0;             // Var, 1-based coordinate index
  long long exponent = 0;        // Pow
  CallFn fn = CallFn::Exp;       // Call
  ExprPtr lhs, rhs;              // children; Pow/Call use lhs only

  static ExprPtr constant(double v);
  static ExprPtr var(VarKind kind, int index);
  static ExprPtr binary(Tag tag, ExprPtr l, ExprPtr r);
  static ExprPtr pow(ExprPtr base, long long exponent);
  static ExprPtr call(CallFn fn, ExprPtr child);
};

/// Structural equality of two expression trees (constants compared exactly).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Parses `src` for dimension n. Errors carry the byte offset of the offending
/// token: SyntaxError, UnknownIdentifier, IndexOutOfRange, BareComplexVariable.
ExprPtr parse(std::string_view src, int n);

/// Fully parenthesized canonical text; parse(print_canonical(a), n) == a.
std::string print_canonical(const ExprPtr& ast);

/// Expression compiled against a fixed dimension, evaluable at jet orders 0-2.
/// Plain evaluation and the order-0 jet share one code path and agree exactly.
class CompiledDefiningFunction final : public ScalarField {
 public:
  CompiledDefiningFunction(ExprPtr ast, int n);

  int dim() const override { return n_; }
  Jet2 jet(const ComplexPoint& z, int order) const override;
  double operator()(const ComplexPoint& z) const { return jet(z, 0).value; }
  const ExprPtr& ast() const { return ast_; }

 private:
  ExprPtr ast_;
  int n_;
};

/// Validates the tree against dimension n and wraps it for evaluation.
std::shared_ptr<const CompiledDefiningFunction> compile(ExprPtr ast, int n);

/// Shortest decimal text that reparses to exactly the same double.
std::string format_double(double v);

}  // namespace qgauge

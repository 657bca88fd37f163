#include <qgauge/expr.hpp>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <vector>

namespace qgauge {

ExprPtr ExprNode::constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->tag = Tag::Const;
  n->value = v;
  return n;
}

ExprPtr ExprNode::var(VarKind kind, int index) {
  auto n = std::make_shared<ExprNode>();
  n->tag = Tag::Var;
  n->var_kind = kind;
  n->var_index = index;
  return n;
}

ExprPtr ExprNode::binary(Tag tag, ExprPtr l, ExprPtr r) {
  auto n = std::make_shared<ExprNode>();
  n->tag = tag;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

ExprPtr ExprNode::pow(ExprPtr base, long long exponent) {
  auto n = std::make_shared<ExprNode>();
  n->tag = Tag::Pow;
  n->lhs = std::move(base);
  n->exponent = exponent;
  return n;
}

ExprPtr ExprNode::call(CallFn fn, ExprPtr child) {
  auto n = std::make_shared<ExprNode>();
  n->tag = Tag::Call;
  n->fn = fn;
  n->lhs = std::move(child);
  return n;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  using Tag = ExprNode::Tag;
  switch (a->tag) {
    case Tag::Const:
      return a->value == b->value;
    case Tag::Var:
      return a->var_kind == b->var_kind && a->var_index == b->var_index;
    case Tag::Pow:
      return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    case Tag::Call:
      return a->fn == b->fn && expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

// ---- lexer -----------------------------------------------------------------

namespace {

enum class Tok {
  Number,
  Ident,   // abs2, re, im, exp, log, sqrt, or unknown
  ZVar,    // z<digits>
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  double number = 0.0;
  std::string text;  // identifier text
  int zindex = 0;    // ZVar
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start};
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return {Tok::Plus, start};
      case '-': ++pos_; return {Tok::Minus, start};
      case '*': ++pos_; return {Tok::Star, start};
      case '/': ++pos_; return {Tok::Slash, start};
      case '^': ++pos_; return {Tok::Caret, start};
      case '(': ++pos_; return {Tok::LParen, start};
      case ')': ++pos_; return {Tok::RParen, start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return lex_ident(start);
    throw ParseError(ErrorKind::SyntaxError,
                     std::string("unexpected character '") + c + "'", start);
  }

 private:
  Token lex_number(std::size_t start) {
    const char* begin = src_.data() + start;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr == begin)
      throw ParseError(ErrorKind::SyntaxError, "malformed number literal",
                       start);
    pos_ = static_cast<std::size_t>(res.ptr - src_.data());
    Token t{Tok::Number, start};
    t.number = value;
    t.text.assign(begin, res.ptr);
    return t;
  }

  Token lex_ident(std::size_t start) {
    std::size_t end = start;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) ||
            src_[end] == '_'))
      ++end;
    pos_ = end;
    std::string text(src_.substr(start, end - start));
    if (text.size() >= 2 && text[0] == 'z') {
      bool digits = true;
      for (std::size_t i = 1; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) digits = false;
      if (digits) {
        Token t{Tok::ZVar, start};
        t.text = text;
        t.zindex = std::atoi(text.c_str() + 1);
        return t;
      }
    }
    Token t{Tok::Ident, start};
    t.text = std::move(text);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---- recursive-descent parser ----------------------------------------------

constexpr int kMaxDepth = 256;

class Parser {
 public:
  Parser(std::string_view src, int n) : lexer_(src), n_(n) { advance(); }

  ExprPtr run() {
    ExprPtr e = parse_expr(0);
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(ErrorKind::SyntaxError,
                       std::string("expected ") + what, cur_.pos);
    advance();
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth)
        throw ParseError(ErrorKind::SyntaxError,
                         "expression nests deeper than 256 levels",
                         p_.cur_.pos);
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  ExprPtr parse_expr(int min_prec) {
    ExprPtr lhs = parse_unary();
    for (;;) {
      int prec;
      ExprNode::Tag tag;
      switch (cur_.kind) {
        case Tok::Plus: prec = 1; tag = ExprNode::Tag::Add; break;
        case Tok::Minus: prec = 1; tag = ExprNode::Tag::Sub; break;
        case Tok::Star: prec = 2; tag = ExprNode::Tag::Mul; break;
        case Tok::Slash: prec = 2; tag = ExprNode::Tag::Div; break;
        default: return lhs;
      }
      if (prec < min_prec) return lhs;
      advance();
      ExprPtr rhs = parse_expr(prec + 1);
      lhs = ExprNode::binary(tag, std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      DepthGuard guard(*this);
      advance();
      // fold a negated literal so "-1.5" round-trips as a constant
      if (cur_.kind == Tok::Number) {
        const double v = cur_.number;
        advance();
        return parse_postfix_on(ExprNode::constant(-v));
      }
      ExprPtr operand = parse_unary();
      return ExprNode::binary(ExprNode::Tag::Sub, ExprNode::constant(0.0),
                              std::move(operand));
    }
    return parse_postfix_on(parse_primary());
  }

  ExprPtr parse_postfix_on(ExprPtr base) {
    while (cur_.kind == Tok::Caret) {
      advance();
      bool negative = false;
      if (cur_.kind == Tok::Minus) {
        negative = true;
        advance();
      }
      if (cur_.kind != Tok::Number ||
          cur_.text.find_first_of(".eE") != std::string::npos)
        throw ParseError(ErrorKind::SyntaxError,
                         "expected integer literal exponent after '^'",
                         cur_.pos);
      if (cur_.text.size() > 9)
        throw ParseError(ErrorKind::SyntaxError, "exponent literal too large",
                         cur_.pos);
      long long k = std::atoll(cur_.text.c_str());
      advance();
      base = ExprNode::pow(std::move(base), negative ? -k : k);
    }
    return base;
  }

  ExprPtr parse_primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return ExprNode::constant(v);
      }
      case Tok::LParen: {
        DepthGuard guard(*this);
        advance();
        ExprPtr e = parse_expr(0);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::ZVar:
        throw ParseError(
            ErrorKind::BareComplexVariable,
            "complex variable " + cur_.text +
                " must be wrapped in abs2(...), re(...) or im(...)",
            cur_.pos);
      case Tok::Ident:
        return parse_call();
      default:
        throw ParseError(ErrorKind::SyntaxError,
                         "expected number, '(', function call or '-'",
                         cur_.pos);
    }
  }

  ExprPtr parse_call() {
    const Token name = cur_;
    advance();
    if (name.text == "abs2" || name.text == "re" || name.text == "im") {
      const VarKind kind = name.text == "abs2" ? VarKind::Abs2
                           : name.text == "re" ? VarKind::Re
                                               : VarKind::Im;
      expect(Tok::LParen, "'('");
      if (cur_.kind != Tok::ZVar)
        throw ParseError(ErrorKind::SyntaxError,
                         "expected complex variable z1..z" + std::to_string(n_),
                         cur_.pos);
      const int j = cur_.zindex;
      if (j < 1 || j > n_)
        throw ParseError(ErrorKind::IndexOutOfRange,
                         "coordinate index " + std::to_string(j) +
                             " outside 1.." + std::to_string(n_),
                         cur_.pos);
      advance();
      expect(Tok::RParen, "')'");
      return ExprNode::var(kind, j);
    }
    if (name.text == "exp" || name.text == "log" || name.text == "sqrt") {
      const CallFn fn = name.text == "exp"   ? CallFn::Exp
                        : name.text == "log" ? CallFn::Log
                                             : CallFn::Sqrt;
      DepthGuard guard(*this);
      expect(Tok::LParen, "'('");
      ExprPtr arg = parse_expr(0);
      expect(Tok::RParen, "')'");
      return ExprNode::call(fn, std::move(arg));
    }
    throw ParseError(ErrorKind::UnknownIdentifier,
                     "unknown identifier '" + name.text + "'", name.pos);
  }

  Lexer lexer_;
  Token cur_{Tok::End, 0};
  int n_;
  int depth_ = 0;
};

void validate_tree(const ExprPtr& node, int n, int depth) {
  if (!node) fail(ErrorKind::BadParameters, "null expression node");
  if (depth > kMaxDepth)
    fail(ErrorKind::BadParameters, "expression nests deeper than 256 levels");
  using Tag = ExprNode::Tag;
  switch (node->tag) {
    case Tag::Const:
      return;
    case Tag::Var:
      if (node->var_index < 1 || node->var_index > n)
        fail(ErrorKind::IndexOutOfRange,
             "coordinate index " + std::to_string(node->var_index) +
                 " outside 1.." + std::to_string(n));
      return;
    case Tag::Pow:
    case Tag::Call:
      validate_tree(node->lhs, n, depth + 1);
      return;
    default:
      validate_tree(node->lhs, n, depth + 1);
      validate_tree(node->rhs, n, depth + 1);
      return;
  }
}

template <class S>
S eval_node(const ExprNode& node, const std::vector<S>& xy, const S& proto) {
  using Tag = ExprNode::Tag;
  switch (node.tag) {
    case Tag::Const:
      return constant_like(proto, node.value);
    case Tag::Var: {
      const std::size_t j = static_cast<std::size_t>(node.var_index - 1);
      const S& x = xy[2 * j];
      const S& y = xy[2 * j + 1];
      switch (node.var_kind) {
        case VarKind::Abs2: return x * x + y * y;
        case VarKind::Re: return x;
        case VarKind::Im: return y;
      }
      break;
    }
    case Tag::Add:
      return eval_node(*node.lhs, xy, proto) + eval_node(*node.rhs, xy, proto);
    case Tag::Sub:
      return eval_node(*node.lhs, xy, proto) - eval_node(*node.rhs, xy, proto);
    case Tag::Mul:
      return eval_node(*node.lhs, xy, proto) * eval_node(*node.rhs, xy, proto);
    case Tag::Div:
      return eval_node(*node.lhs, xy, proto) / eval_node(*node.rhs, xy, proto);
    case Tag::Pow:
      return s_pow_int(eval_node(*node.lhs, xy, proto), node.exponent);
    case Tag::Call: {
      const S arg = eval_node(*node.lhs, xy, proto);
      switch (node.fn) {
        case CallFn::Exp: return s_exp(arg);
        case CallFn::Log: return s_log(arg);
        case CallFn::Sqrt: return s_sqrt(arg);
      }
      break;
    }
  }
  fail(ErrorKind::EvaluationError, "corrupt expression node");
}

struct AstEvaluator {
  ExprPtr ast;

  template <class S>
  S operator()(const std::vector<S>& xy) const {
    return eval_node(*ast, xy, xy.front());
  }
};

}  // namespace

ExprPtr parse(std::string_view src, int n) {
  if (src.empty())
    throw ParseError(ErrorKind::SyntaxError, "empty expression", 0);
  if (n < 1) fail(ErrorKind::BadParameters, "dimension must be >= 1");
  return Parser(src, n).run();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void print_node(const ExprNode& node, std::string& out) {
  using Tag = ExprNode::Tag;
  switch (node.tag) {
    case Tag::Const:
      out += format_double(node.value);
      return;
    case Tag::Var: {
      const char* name = node.var_kind == VarKind::Abs2 ? "abs2"
                         : node.var_kind == VarKind::Re ? "re"
                                                        : "im";
      out += name;
      out += "(z";
      out += std::to_string(node.var_index);
      out += ')';
      return;
    }
    case Tag::Pow:
      out += '(';
      print_node(*node.lhs, out);
      out += " ^ ";
      out += std::to_string(node.exponent);
      out += ')';
      return;
    case Tag::Call: {
      const char* name = node.fn == CallFn::Exp   ? "exp"
                         : node.fn == CallFn::Log ? "log"
                                                  : "sqrt";
      out += name;
      out += '(';
      print_node(*node.lhs, out);
      out += ')';
      return;
    }
    default: {
      const char* op = node.tag == Tag::Add   ? " + "
                       : node.tag == Tag::Sub ? " - "
                       : node.tag == Tag::Mul ? " * "
                                              : " / ";
      out += '(';
      print_node(*node.lhs, out);
      out += op;
      print_node(*node.rhs, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_canonical(const ExprPtr& ast) {
  if (!ast) fail(ErrorKind::BadParameters, "null expression");
  std::string out;
  print_node(*ast, out);
  return out;
}

CompiledDefiningFunction::CompiledDefiningFunction(ExprPtr ast, int n)
    : ast_(std::move(ast)), n_(n) {
  if (n_ < 1) fail(ErrorKind::BadParameters, "dimension must be >= 1");
  validate_tree(ast_, n_, 0);
}

Jet2 CompiledDefiningFunction::jet(const ComplexPoint& z, int order) const {
  FunctorField<AstEvaluator> field(n_, AstEvaluator{ast_});
  return field.jet(z, order);
}

std::shared_ptr<const CompiledDefiningFunction> compile(ExprPtr ast, int n) {
  return std::make_shared<CompiledDefiningFunction>(std::move(ast), n);
}

}  // namespace qgauge

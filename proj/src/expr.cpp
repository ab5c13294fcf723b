#include "nilpet/expr.hpp"

#include <cctype>

namespace nilpet {

struct Expr::Node {
  enum class Kind { Const, Var, Add, Sub, Mul, Neg, Pow, DivC };
  Kind kind = Kind::Const;
  Int value;                         // Const
  size_t var = 0;                    // Var
  std::shared_ptr<const Node> a, b;  // operands
  unsigned long exp = 0;             // Pow
  Rat divisor;                       // DivC, nonzero
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

bool has_var(const NodePtr& n) {
  if (!n) return false;
  switch (n->kind) {
    case Kind::Const: return false;
    case Kind::Var: return true;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul: return has_var(n->a) || has_var(n->b);
    case Kind::Neg:
    case Kind::Pow:
    case Kind::DivC: return has_var(n->a);
  }
  return true;
}

Rat const_eval(const Node& n) {
  switch (n.kind) {
    case Kind::Const: return Rat(n.value);
    case Kind::Add: return const_eval(*n.a) + const_eval(*n.b);
    case Kind::Sub: return const_eval(*n.a) - const_eval(*n.b);
    case Kind::Mul: return const_eval(*n.a) * const_eval(*n.b);
    case Kind::Neg: return -const_eval(*n.a);
    case Kind::Pow: {
      Rat b = const_eval(*n.a), r = 1;
      for (unsigned long i = 0; i < n.exp; ++i) r *= b;
      return r;
    }
    case Kind::DivC: {
      Rat r = const_eval(*n.a) / n.divisor;
      r.canonicalize();
      return r;
    }
    case Kind::Var: break;
  }
  throw ExprError("internal: const_eval reached a variable", 0);
}

struct Parser {
  const std::string& s;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg, size_t at) { throw ExprError(msg, at); }

  Int integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer", start);
    return Int(s.substr(start, pos - start));
  }

  static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

  NodePtr primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of expression", pos);
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Node n;
      n.kind = Kind::Const;
      n.value = integer();
      return make(std::move(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      const std::string name = s.substr(start, pos - start);
      for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) {
          Node n;
          n.kind = Kind::Var;
          n.var = i;
          return make(std::move(n));
        }
      }
      fail("unknown variable '" + name + "'", start);
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  NodePtr factor() {
    NodePtr base = primary();
    skip();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip();
      size_t at = pos;
      Int e = integer();
      if (e < 0 || e > 64) fail("exponent out of range [0,64]", at);
      Node n;
      n.kind = Kind::Pow;
      n.a = base;
      n.exp = e.get_ui();
      return make(std::move(n));
    }
    return base;
  }

  NodePtr unary() {
    skip();
    if (pos < s.size() && s[pos] == '-') {
      ++pos;
      Node n;
      n.kind = Kind::Neg;
      n.a = unary();
      return make(std::move(n));
    }
    return factor();
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      skip();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        Node n;
        n.kind = Kind::Mul;
        n.a = lhs;
        n.b = unary();
        lhs = make(std::move(n));
      } else if (pos < s.size() && s[pos] == '/') {
        size_t at = pos;
        ++pos;
        NodePtr rhs = unary();
        if (has_var(rhs)) fail("divisor must be a constant expression", at);
        Rat d = const_eval(*rhs);
        if (d == 0) fail("division by zero", at);
        Node n;
        n.kind = Kind::DivC;
        n.a = lhs;
        n.divisor = d;
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        const bool add = s[pos] == '+';
        ++pos;
        Node n;
        n.kind = add ? Kind::Add : Kind::Sub;
        n.a = lhs;
        n.b = term();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }
};

template <typename T>
T eval_node(const Node& n, const std::vector<T>& values) {
  switch (n.kind) {
    case Kind::Const:
      if constexpr (std::is_same_v<T, Rat>)
        return Rat(n.value);
      else
        return RatPoly::constant(Rat(n.value));
    case Kind::Var: return values.at(n.var);
    case Kind::Add: return eval_node(*n.a, values) + eval_node(*n.b, values);
    case Kind::Sub: return eval_node(*n.a, values) - eval_node(*n.b, values);
    case Kind::Mul: return eval_node(*n.a, values) * eval_node(*n.b, values);
    case Kind::Neg: return -eval_node(*n.a, values);
    case Kind::Pow: {
      T base = eval_node(*n.a, values);
      if constexpr (std::is_same_v<T, Rat>) {
        Rat r = 1;
        for (unsigned long i = 0; i < n.exp; ++i) r *= base;
        return r;
      } else {
        return base.pow(n.exp);
      }
    }
    case Kind::DivC: {
      T v = eval_node(*n.a, values);
      if constexpr (std::is_same_v<T, Rat>) {
        Rat r = v / n.divisor;
        r.canonicalize();
        return r;
      } else {
        Rat inv = Rat(1) / n.divisor;
        inv.canonicalize();
        return v.scaled(inv);
      }
    }
  }
  throw std::logic_error("unreachable expression kind");
}

} // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& vars) {
  Parser p{text, vars};
  Expr e;
  e.root_ = p.expr();
  p.skip();
  if (p.pos != text.size()) throw ExprError("trailing input", p.pos);
  e.src_ = text;
  return e;
}

Rat Expr::eval_rat(const std::vector<Rat>& values) const { return eval_node(*root_, values); }

RatPoly Expr::eval_poly(const std::vector<RatPoly>& values) const {
  return eval_node(*root_, values);
}

} // namespace nilpet

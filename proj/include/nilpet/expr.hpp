// Expression trees for group-law coordinate maps. The accepted language is
// + - * ^ over integer literals, named variables and parentheses, extended
// with exact division by a constant (variable-free) nonzero subexpression so
// that power maps with binomial-coefficient terms stay expressible.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilpet/intpoly.hpp"

namespace nilpet {

struct ExprError : std::runtime_error {
  size_t pos; // 0-based offset into the source text
  ExprError(const std::string& what, size_t p) : std::runtime_error(what), pos(p) {}
};

class Expr {
 public:
  struct Node; // tree representation, defined in expr.cpp

  Expr() = default;

  // Parses `text` over the given variable names. Unknown identifiers, bad
  // exponents and division by a non-constant are reported with a position.
  static Expr parse(const std::string& text, const std::vector<std::string>& vars);

  // Evaluates with exact rational scalars.
  Rat eval_rat(const std::vector<Rat>& values) const;
  // Evaluates with rational-polynomial values (variables stand for
  // polynomials in a common indeterminate).
  RatPoly eval_poly(const std::vector<RatPoly>& values) const;

  const std::string& text() const { return src_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
};

} // namespace nilpet

// Gamma-polynomials in canonical form S_1^{p_1(n)} ... S_s^{p_s(n)}: exact
// group operations carried out symbolically through the model's coordinate
// laws, weights and equivalence, and the constructive shift lemmas.
#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilpet/intpoly.hpp"
#include "nilpet/nilgroup.hpp"

namespace nilpet {

struct ModelMismatch : std::runtime_error {
  explicit ModelMismatch(const std::string& w) : std::runtime_error(w) {}
};
// A group-law composition produced a non-integer coordinate polynomial;
// signals a broken GroupModel, not bad user input.
struct InternalNotIntegral : std::runtime_error {
  explicit InternalNotIntegral(const std::string& w) : std::runtime_error(w) {}
};
struct NotInPG0 : std::runtime_error {
  explicit NotInPG0(const std::string& w) : std::runtime_error(w) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& w) : std::runtime_error(w) {}
};
struct SearchExhausted : std::runtime_error {
  explicit SearchExhausted(const std::string& w) : std::runtime_error(w) {}
};
struct DegreeGuardExceeded : std::runtime_error {
  explicit DegreeGuardExceeded(const std::string& w) : std::runtime_error(w) {}
};

// Weight (l,k): largest basis index l whose exponent polynomial is nonzero
// and that polynomial's degree k; (0,0) for the identity. Ordered
// lexicographically, l first.
struct Weight {
  int l = 0;
  int k = 0;
  auto operator<=>(const Weight&) const = default;
};
std::string format_weight(const Weight& w); // "(l,k)"

class GammaPolynomial {
 public:
  GammaPolynomial(Model model, std::vector<IntPoly> components);

  const Model& model() const { return model_; }
  const std::vector<IntPoly>& components() const { return comps_; }
  const IntPoly& component(int j) const { return comps_.at(static_cast<size_t>(j) - 1); } // 1-based

  bool operator==(const GammaPolynomial& o) const;

 private:
  Model model_;
  std::vector<IntPoly> comps_;
};

GammaPolynomial gp_identity(const Model& m);
// The constant map n -> value.
GammaPolynomial gp_constant(const Model& m, const MalcevExponents& value);

MalcevExponents evaluate(const GammaPolynomial& g, const Int& n);

GammaPolynomial gp_multiply(const GammaPolynomial& g, const GammaPolynomial& h);
GammaPolynomial gp_inverse(const GammaPolynomial& g);
// g^p(n) = g(n)^{p(n)}
GammaPolynomial gp_power(const GammaPolynomial& g, const IntPoly& p);
// n -> g(m)^-1 g(n+m); equivalent to g, stays in PG_0 when g is.
GammaPolynomial shift_derive(const GammaPolynomial& g, const Int& m);
// h^-1 g h; equivalent to g.
GammaPolynomial conjugate(const GammaPolynomial& g, const GammaPolynomial& h);

Weight weight(const GammaPolynomial& g);
// Leading monomial coefficient of the top nonzero component; 0 for identity.
Rat leading_coefficient(const GammaPolynomial& g);
// Same weight and, unless that weight is (0,0), same leading coefficient.
bool equivalent(const GammaPolynomial& g, const GammaPolynomial& h);

bool is_identity(const GammaPolynomial& g);
bool in_pg0(const GammaPolynomial& g); // g(0) = e

// f(n) = f(1)^n as canonical forms. Requires f in PG_0.
bool is_character(const GammaPolynomial& f);

// Total deterministic order on canonical forms (used for tie-breaks):
// component-wise comparison of degree then binomial coefficients.
int compare_canonical(const GammaPolynomial& a, const GammaPolynomial& b);

// Shifts k_i = i(L+2)+u such that the forms
// d_{i,j}(n) = f(k_i+j)^-1 f(k_i+j+n) f(n)^-1, 0 <= i <= ell, 0 <= j <= L,
// all lie in PG_0* and are pairwise distinct; both conditions are verified
// symbolically before returning. Requires f in PG_0 and not a character.
std::vector<Int> derived_distinct_shifts(const GammaPolynomial& f, int ell, int L,
                                         long search_bound = 1000000);

// Increasing k_0 < ... < k_ell such that for every t >= 2 and every i the
// form f_t(k_i)^-1 f_t(n+k_i) f_1(n)^-1 lies in PG_0*, and the forms are
// pairwise distinct across (t,i),(s,j) with t != s. Greedy search with each
// candidate verified symbolically. Elements must be pairwise distinct and in
// PG_0*.
std::vector<Int> shift_gap_sequence(const std::vector<GammaPolynomial>& f_list, int ell,
                                    long search_bound = 1000000);

// --- text notation ---------------------------------------------------------
// gpoly := "e" | factor {factor};  factor := "S" index "^" "{" poly "}"
// poly  := ["-"] term {("+"|"-") term}
// term  := [int ["*"]] ("n" ["^" int] | "C(n," int ")" | int)
// Factors must appear in strictly increasing index order. For rank-1 models
// "T" is accepted as an alias for "S1".

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& w, size_t p) : std::runtime_error(w), pos(p) {}
};
struct CanonicalOrderError : ParseError {
  CanonicalOrderError(const std::string& w, size_t p) : ParseError(w, p) {}
};

GammaPolynomial parse_gpoly(const std::string& text, const Model& m);
// Canonical printer; print-then-parse is the identity on canonical forms.
std::string print_gpoly(const GammaPolynomial& g);
std::string print_poly(const IntPoly& p);
// Bare integer polynomial in the same `poly` sub-grammar.
IntPoly parse_poly(const std::string& text);

} // namespace nilpet

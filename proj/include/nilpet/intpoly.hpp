// Exact univariate polynomial arithmetic: integer-valued polynomials in the
// binomial-coefficient basis, plus rational polynomials in the monomial basis
// used as the working representation for symbolic composition.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace nilpet {

using Int = mpz_class;
using Rat = mpq_class;

struct NotIntegral : std::runtime_error {
  explicit NotIntegral(const std::string& what) : std::runtime_error(what) {}
};

// C(n,k) = n(n-1)...(n-k+1)/k!, defined for all integers n (negative included).
Int binom(const Int& n, unsigned long k);

class RatPoly;

// Integer-valued polynomial p(n) = sum c_k * C(n,k).
// Invariant: trailing coefficient nonzero; empty vector is the zero polynomial
// (degree -1 sentinel). Integer-valuedness on Z is structural in this basis.
class IntPoly {
 public:
  IntPoly() = default;

  static IntPoly from_binomial(std::vector<Int> coeffs);
  // Monomial coefficients for n^0..n^D; throws NotIntegral unless the
  // polynomial takes integer values on all of Z.
  static IntPoly from_monomials(const std::vector<Rat>& coeffs);
  static IntPoly constant(Int v);
  static IntPoly n(); // the identity polynomial n
  // coeff * n^k
  static IntPoly monomial(unsigned long k, Int coeff = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Int>& binomial_coeffs() const { return c_; }
  std::vector<Rat> monomial_coeffs() const; // exact; empty for zero
  // Coefficient of n^D in the monomial basis: c_D / D!. Zero for the zero
  // polynomial.
  Rat leading_monomial_coeff() const;

  Int operator()(const Int& n) const;
  Int at_zero() const { return c_.empty() ? Int(0) : c_[0]; }

  // p(n+m) for a fixed integer m; exact via the Vandermonde identity.
  IntPoly shifted(const Int& m) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

 private:
  std::vector<Int> c_;
  void normalize();
};

// Rational polynomial in the monomial basis; the scratch representation for
// composing group-law expressions. Invariant: trailing coefficient nonzero.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(const IntPoly& p);

  static RatPoly constant(Rat v);
  static RatPoly var(); // n

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  RatPoly compose(const RatPoly& inner) const; // p(inner(n))
  RatPoly pow(unsigned long e) const;
  RatPoly scaled(const Rat& f) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  RatPoly operator-() const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  // Conversion back to the binomial basis; throws NotIntegral if the
  // polynomial is not integer-valued on Z.
  IntPoly to_integral() const;

 private:
  std::vector<Rat> c_;
  void normalize();
};

} // namespace nilpet

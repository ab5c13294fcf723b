#include "nilpet/intpoly.hpp"

#include <utility>

namespace nilpet {

Int binom(const Int& n, unsigned long k) {
  Int num = 1;
  for (unsigned long i = 0; i < k; ++i) num *= n - static_cast<long>(i);
  Int fact = 1;
  for (unsigned long i = 2; i <= k; ++i) fact *= static_cast<long>(i);
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  return q;
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::from_binomial(std::vector<Int> coeffs) {
  IntPoly p;
  p.c_ = std::move(coeffs);
  p.normalize();
  return p;
}

IntPoly IntPoly::from_monomials(const std::vector<Rat>& coeffs) {
  std::vector<Rat> rc = coeffs;
  while (!rc.empty() && rc.back() == 0) rc.pop_back();
  if (rc.empty()) return IntPoly{};
  const size_t d = rc.size() - 1;
  // Values p(0..d), then the forward-difference table: c_k = Delta^k p(0).
  std::vector<Rat> row(d + 1);
  for (size_t i = 0; i <= d; ++i) {
    Rat v = 0, x = 1;
    const Rat xi(static_cast<long>(i));
    for (size_t j = 0; j < rc.size(); ++j) {
      v += rc[j] * x;
      x *= xi;
    }
    row[i] = v;
  }
  std::vector<Int> out(d + 1);
  for (size_t k = 0; k <= d; ++k) {
    const Rat& head = row[0];
    if (head.get_den() != 1)
      throw NotIntegral("polynomial is not integer-valued on Z (binomial coefficient " +
                        std::to_string(k) + " is " + head.get_str() + ")");
    out[k] = head.get_num();
    for (size_t i = 0; i + k + 1 <= d; ++i) row[i] = row[i + 1] - row[i];
  }
  return from_binomial(std::move(out));
}

IntPoly IntPoly::constant(Int v) { return from_binomial({std::move(v)}); }

IntPoly IntPoly::n() { return from_binomial({Int(0), Int(1)}); }

IntPoly IntPoly::monomial(unsigned long k, Int coeff) {
  std::vector<Rat> mono(k + 1, Rat(0));
  mono[k] = Rat(std::move(coeff));
  return from_monomials(mono); // n^k is integer-valued, cannot throw
}

std::vector<Rat> IntPoly::monomial_coeffs() const {
  if (c_.empty()) return {};
  // Accumulate c_k * C(n,k) with C(n,k) = C(n,k-1) * (n-k+1)/k.
  std::vector<Rat> acc(c_.size(), Rat(0));
  std::vector<Rat> basis{Rat(1)}; // C(n,0)
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) {
      // multiply basis by (n - (k-1)) / k
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      const Rat shift(-static_cast<long>(k - 1));
      const Rat inv_k(1, static_cast<long>(k));
      for (size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i] * inv_k;
        next[i] += basis[i] * shift * inv_k;
      }
      basis = std::move(next);
    }
    const Rat ck(c_[k]);
    for (size_t i = 0; i < basis.size(); ++i) acc[i] += ck * basis[i];
  }
  for (auto& q : acc) q.canonicalize();
  return acc;
}

Rat IntPoly::leading_monomial_coeff() const {
  if (c_.empty()) return Rat(0);
  Int fact = 1;
  for (size_t i = 2; i < c_.size(); ++i) fact *= static_cast<long>(i);
  Rat r(c_.back(), fact);
  r.canonicalize();
  return r;
}

Int IntPoly::operator()(const Int& n) const {
  Int v = 0;
  Int term = 1; // C(n,k), built incrementally
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) {
      term *= n - static_cast<long>(k - 1);
      Int q;
      mpz_divexact_ui(q.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(k));
      term = q;
    }
    v += c_[k] * term;
  }
  return v;
}

IntPoly IntPoly::shifted(const Int& m) const {
  if (c_.empty()) return {};
  // C(n+m, k) = sum_i C(m, k-i) C(n, i)  =>  d_i = sum_{k>=i} c_k C(m, k-i)
  const size_t D = c_.size() - 1;
  std::vector<Int> d(D + 1, Int(0));
  for (size_t i = 0; i <= D; ++i)
    for (size_t k = i; k <= D; ++k) d[i] += c_[k] * binom(m, static_cast<unsigned long>(k - i));
  return from_binomial(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return IntPoly::from_binomial(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return IntPoly::from_binomial(std::move(c));
}

IntPoly IntPoly::operator-() const {
  std::vector<Int> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return from_binomial(std::move(c));
}

// --- RatPoly ----------------------------------------------------------------

void RatPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly::RatPoly(const IntPoly& p) {
  auto mono = p.monomial_coeffs();
  c_.assign(mono.begin(), mono.end());
  normalize();
}

RatPoly RatPoly::constant(Rat v) {
  RatPoly p;
  p.c_ = {std::move(v)};
  p.normalize();
  return p;
}

RatPoly RatPoly::var() {
  RatPoly p;
  p.c_ = {Rat(0), Rat(1)};
  return p;
}

Rat RatPoly::eval(const Rat& x) const {
  Rat v = 0;
  for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  r.normalize();
  return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
  r.normalize();
  return r;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatPoly r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.normalize();
  return r;
}

RatPoly RatPoly::operator-() const {
  RatPoly r;
  r.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
  RatPoly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * inner + RatPoly::constant(c_[i]);
  return r;
}

RatPoly RatPoly::pow(unsigned long e) const {
  RatPoly r = RatPoly::constant(Rat(1));
  RatPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

RatPoly RatPoly::scaled(const Rat& f) const {
  RatPoly r;
  r.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] = c_[i] * f;
    r.c_[i].canonicalize();
  }
  r.normalize();
  return r;
}

IntPoly RatPoly::to_integral() const {
  std::vector<Rat> mono(c_.begin(), c_.end());
  return IntPoly::from_monomials(mono);
}

} // namespace nilpet

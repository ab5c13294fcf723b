#include <cctype>

#include "nilpet/gpoly.hpp"

namespace nilpet {

namespace {

constexpr unsigned long kMaxExponent = 64;

struct TextParser {
  const std::string& s;
  size_t pos = 0;

  explicit TextParser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip();
    return pos >= s.size();
  }
  char peek() { return pos < s.size() ? s[pos] : '\0'; }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + what);
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " (column " + std::to_string(pos + 1) + ")", pos);
  }

  bool digit_next() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }

  Int integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected an integer");
    return Int(s.substr(start, pos - start));
  }

  unsigned long small_uint(const char* what) {
    const Int v = integer();
    if (v > kMaxExponent)
      fail(std::string(what) + " exceeds the limit of " + std::to_string(kMaxExponent));
    return v.get_ui();
  }

  // term := [int ["*"]] ("n" ["^" int] | "C(n," int ")" | int)
  IntPoly term() {
    skip();
    Int coeff = 1;
    bool have_coeff = false;
    if (digit_next()) {
      coeff = integer();
      have_coeff = true;
      skip();
      if (peek() == '*') {
        ++pos;
        skip();
        if (peek() != 'n' && peek() != 'C') fail("expected 'n' or 'C(n,k)' after '*'");
      } else if (peek() != 'n' && peek() != 'C') {
        return IntPoly::constant(coeff);
      }
    }
    skip();
    if (peek() == 'n') {
      ++pos;
      unsigned long k = 1;
      if (eat('^')) k = small_uint("exponent");
      return IntPoly::monomial(k, coeff);
    }
    if (peek() == 'C') {
      ++pos;
      expect('(', "after C");
      skip();
      if (peek() != 'n') fail("expected 'n' inside C(n,k)");
      ++pos;
      expect(',', "inside C(n,k)");
      const unsigned long k = small_uint("binomial index");
      expect(')', "closing C(n,k)");
      std::vector<Int> c(k + 1, Int(0));
      c[k] = coeff;
      return IntPoly::from_binomial(std::move(c));
    }
    if (have_coeff) return IntPoly::constant(coeff);
    fail("expected a term");
  }

  // poly := ["-"] term {("+"|"-") term}
  IntPoly poly() {
    skip();
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    }
    IntPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos;
        acc = acc + term();
      } else if (peek() == '-') {
        ++pos;
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }
};

std::string format_coeff_term(const Int& coeff, const std::string& sym, bool lead) {
  const bool neg = coeff < 0;
  const Int a = abs(coeff);
  std::string body;
  if (sym.empty()) {
    body = a.get_str();
  } else if (a == 1) {
    body = sym;
  } else {
    body = a.get_str() + sym;
  }
  if (lead) return (neg ? "-" : "") + body;
  return (neg ? "-" : "+") + body;
}

} // namespace

IntPoly parse_poly(const std::string& text) {
  TextParser p(text);
  IntPoly r = p.poly();
  if (!p.done()) p.fail("trailing input after polynomial");
  return r;
}

GammaPolynomial parse_gpoly(const std::string& text, const Model& m) {
  TextParser p(text);
  p.skip();
  if (p.peek() == 'e') {
    ++p.pos;
    if (!p.done()) p.fail("trailing input after identity 'e'");
    return gp_identity(m);
  }
  std::vector<IntPoly> comps(static_cast<size_t>(m->s));
  int last_idx = 0;
  bool any = false;
  while (!p.done()) {
    const size_t at = p.pos;
    int idx = 0;
    if (p.peek() == 'T') {
      if (m->s != 1)
        p.fail("the alias 'T' is only valid for rank-1 models");
      ++p.pos;
      idx = 1;
    } else if (p.peek() == 'S') {
      ++p.pos;
      if (!p.digit_next()) p.fail("expected a basis index after 'S'");
      const Int v = p.integer();
      if (v < 1 || v > m->s)
        p.fail("basis index " + v.get_str() + " out of range 1.." + std::to_string(m->s));
      idx = static_cast<int>(v.get_si());
    } else {
      p.fail("expected a factor 'S<j>^{...}'");
    }
    if (idx <= last_idx)
      throw CanonicalOrderError("factors must appear in strictly increasing index order (column " +
                                    std::to_string(at + 1) + ")",
                                at);
    p.expect('^', "after the basis element");
    p.expect('{', "opening the exponent polynomial");
    comps[static_cast<size_t>(idx) - 1] = p.poly();
    p.expect('}', "closing the exponent polynomial");
    last_idx = idx;
    any = true;
  }
  if (!any) p.fail("empty expression");
  return GammaPolynomial(m, std::move(comps));
}

std::string print_poly(const IntPoly& p) {
  if (p.is_zero()) return "0";
  const std::vector<Rat> mono = p.monomial_coeffs();
  bool all_int = true;
  for (const Rat& c : mono)
    if (c.get_den() != 1) {
      all_int = false;
      break;
    }
  std::string out;
  if (all_int) {
    for (size_t k = mono.size(); k-- > 0;) {
      const Int c = mono[k].get_num();
      if (c == 0) continue;
      std::string sym;
      if (k == 1) sym = "n";
      else if (k >= 2) sym = "n^" + std::to_string(k);
      out += format_coeff_term(c, sym, out.empty());
    }
  } else {
    const std::vector<Int>& bc = p.binomial_coeffs();
    for (size_t k = bc.size(); k-- > 0;) {
      const Int& c = bc[k];
      if (c == 0) continue;
      std::string sym;
      if (k == 1) sym = "n";
      else if (k >= 2) sym = "C(n," + std::to_string(k) + ")";
      out += format_coeff_term(c, sym, out.empty());
    }
  }
  return out;
}

std::string print_gpoly(const GammaPolynomial& g) {
  const int s = g.model()->s;
  std::string out;
  for (int j = 1; j <= s; ++j) {
    const IntPoly& p = g.component(j);
    if (p.is_zero()) continue;
    if (!out.empty()) out += ' ';
    out += (s == 1) ? "T" : "S" + std::to_string(j);
    out += "^{" + print_poly(p) + "}";
  }
  return out.empty() ? "e" : out;
}

} // namespace nilpet

#include "nilpet/gpoly.hpp"

#include <algorithm>

namespace nilpet {

std::string format_weight(const Weight& w) {
  return "(" + std::to_string(w.l) + "," + std::to_string(w.k) + ")";
}

GammaPolynomial::GammaPolynomial(Model model, std::vector<IntPoly> components)
    : model_(std::move(model)), comps_(std::move(components)) {
  if (!model_) throw std::invalid_argument("GammaPolynomial needs a model");
  if (static_cast<int>(comps_.size()) != model_->s)
    throw DimensionMismatch("component count differs from model rank");
}

bool GammaPolynomial::operator==(const GammaPolynomial& o) const {
  return same_model(model_, o.model_) && comps_ == o.comps_;
}

GammaPolynomial gp_identity(const Model& m) {
  return GammaPolynomial(m, std::vector<IntPoly>(static_cast<size_t>(m->s)));
}

GammaPolynomial gp_constant(const Model& m, const MalcevExponents& value) {
  if (static_cast<int>(value.size()) != m->s)
    throw DimensionMismatch("coordinate vector length differs from model rank");
  std::vector<IntPoly> comps;
  comps.reserve(value.size());
  for (const Int& v : value) comps.push_back(IntPoly::constant(v));
  return GammaPolynomial(m, std::move(comps));
}

MalcevExponents evaluate(const GammaPolynomial& g, const Int& n) {
  MalcevExponents out;
  out.reserve(g.components().size());
  for (const IntPoly& p : g.components()) out.push_back(p(n));
  return out;
}

namespace {

void check_models(const GammaPolynomial& g, const GammaPolynomial& h) {
  if (!same_model(g.model(), h.model()))
    throw ModelMismatch("operands use different group models");
}

std::vector<IntPoly> apply_laws(const Model& m, const std::vector<Expr>& exprs,
                                const std::vector<RatPoly>& vals) {
  std::vector<IntPoly> out;
  out.reserve(exprs.size());
  for (size_t i = 0; i < exprs.size(); ++i) {
    RatPoly r = exprs[i].eval_poly(vals);
    if (r.degree() > m->degree_guard)
      throw DegreeGuardExceeded("component " + std::to_string(i + 1) + " reached degree " +
                                std::to_string(r.degree()) + " (guard " +
                                std::to_string(m->degree_guard) + ")");
    try {
      out.push_back(r.to_integral());
    } catch (const NotIntegral&) {
      throw InternalNotIntegral("group law produced a non-integer-valued component " +
                                std::to_string(i + 1));
    }
  }
  return out;
}

} // namespace

GammaPolynomial gp_multiply(const GammaPolynomial& g, const GammaPolynomial& h) {
  check_models(g, h);
  const Model& m = g.model();
  std::vector<RatPoly> vals;
  vals.reserve(2 * g.components().size());
  for (const IntPoly& p : g.components()) vals.emplace_back(p);
  for (const IntPoly& p : h.components()) vals.emplace_back(p);
  return GammaPolynomial(m, apply_laws(m, m->mul, vals));
}

GammaPolynomial gp_power(const GammaPolynomial& g, const IntPoly& p) {
  const Model& m = g.model();
  std::vector<RatPoly> vals;
  vals.reserve(g.components().size() + 1);
  for (const IntPoly& c : g.components()) vals.emplace_back(c);
  vals.emplace_back(p);
  return GammaPolynomial(m, apply_laws(m, m->pow, vals));
}

GammaPolynomial gp_inverse(const GammaPolynomial& g) {
  return gp_power(g, IntPoly::constant(-1));
}

GammaPolynomial shift_derive(const GammaPolynomial& g, const Int& m) {
  const GammaPolynomial head = gp_constant(g.model(), inverse(g.model(), evaluate(g, m)));
  std::vector<IntPoly> shifted;
  shifted.reserve(g.components().size());
  for (const IntPoly& p : g.components()) shifted.push_back(p.shifted(m));
  return gp_multiply(head, GammaPolynomial(g.model(), std::move(shifted)));
}

GammaPolynomial conjugate(const GammaPolynomial& g, const GammaPolynomial& h) {
  check_models(g, h);
  return gp_multiply(gp_multiply(gp_inverse(h), g), h);
}

Weight weight(const GammaPolynomial& g) {
  const auto& comps = g.components();
  for (size_t j = comps.size(); j-- > 0;)
    if (!comps[j].is_zero()) return Weight{static_cast<int>(j) + 1, comps[j].degree()};
  return Weight{0, 0};
}

Rat leading_coefficient(const GammaPolynomial& g) {
  const auto& comps = g.components();
  for (size_t j = comps.size(); j-- > 0;)
    if (!comps[j].is_zero()) return comps[j].leading_monomial_coeff();
  return Rat(0);
}

bool equivalent(const GammaPolynomial& g, const GammaPolynomial& h) {
  check_models(g, h);
  const Weight wg = weight(g);
  if (wg != weight(h)) return false;
  if (wg == Weight{0, 0}) return true;
  return leading_coefficient(g) == leading_coefficient(h);
}

bool is_identity(const GammaPolynomial& g) {
  for (const IntPoly& p : g.components())
    if (!p.is_zero()) return false;
  return true;
}

bool in_pg0(const GammaPolynomial& g) {
  for (const IntPoly& p : g.components())
    if (p.at_zero() != 0) return false;
  return true;
}

bool is_character(const GammaPolynomial& f) {
  if (!in_pg0(f)) throw NotInPG0("is_character requires f(0) = e");
  const GammaPolynomial one_step = gp_constant(f.model(), evaluate(f, Int(1)));
  return f == gp_power(one_step, IntPoly::n());
}

int compare_canonical(const GammaPolynomial& a, const GammaPolynomial& b) {
  check_models(a, b);
  for (size_t j = 0; j < a.components().size(); ++j) {
    const auto& ca = a.components()[j].binomial_coeffs();
    const auto& cb = b.components()[j].binomial_coeffs();
    if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
    for (size_t k = ca.size(); k-- > 0;) {
      const int c = cmp(ca[k], cb[k]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
  }
  return 0;
}

namespace {

bool in_pg0_star(const GammaPolynomial& g) { return in_pg0(g) && !is_identity(g); }

bool pairwise_distinct(const std::vector<GammaPolynomial>& fs) {
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j)
      if (fs[i] == fs[j]) return false;
  return true;
}

} // namespace

std::vector<Int> derived_distinct_shifts(const GammaPolynomial& f, int ell, int L,
                                         long search_bound) {
  if (ell < 0 || L < 0) throw std::invalid_argument("ell and L must be nonnegative");
  if (!in_pg0(f)) throw PreconditionViolated("f must satisfy f(0) = e");
  if (is_character(f))
    throw PreconditionViolated("f is a character: every derived form collapses to the identity");
  const GammaPolynomial f_inv = gp_inverse(f);
  for (long u = 1; u <= search_bound; ++u) {
    std::vector<Int> ks;
    ks.reserve(static_cast<size_t>(ell) + 1);
    for (int i = 0; i <= ell; ++i) ks.emplace_back(Int(i) * (L + 2) + u);
    std::vector<GammaPolynomial> forms;
    forms.reserve(ks.size() * static_cast<size_t>(L + 1));
    bool ok = true;
    for (const Int& k : ks) {
      for (int j = 0; j <= L && ok; ++j) {
        GammaPolynomial d = gp_multiply(shift_derive(f, k + j), f_inv);
        if (!in_pg0_star(d)) ok = false;
        forms.push_back(std::move(d));
      }
      if (!ok) break;
    }
    if (ok && pairwise_distinct(forms)) return ks;
  }
  throw SearchExhausted("no admissible shift base u within bound " + std::to_string(search_bound));
}

std::vector<Int> shift_gap_sequence(const std::vector<GammaPolynomial>& f_list, int ell,
                                    long search_bound) {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  if (f_list.empty()) throw PreconditionViolated("element list is empty");
  for (size_t t = 1; t < f_list.size(); ++t) check_models(f_list[0], f_list[t]);
  for (const GammaPolynomial& f : f_list)
    if (!in_pg0_star(f)) throw PreconditionViolated("all elements must lie in PG_0*");
  if (!pairwise_distinct(f_list)) throw PreconditionViolated("elements must be pairwise distinct");

  const GammaPolynomial f1_inv = gp_inverse(f_list[0]);
  const size_t T = f_list.size();
  std::vector<Int> ks;
  // accepted[a] holds the derived forms for ks[a], indexed by t-2.
  std::vector<std::vector<GammaPolynomial>> accepted;
  for (long k = 1; k <= search_bound && ks.size() <= static_cast<size_t>(ell); ++k) {
    std::vector<GammaPolynomial> cand;
    cand.reserve(T - 1);
    bool ok = true;
    for (size_t t = 1; t < T && ok; ++t) {
      GammaPolynomial d = gp_multiply(shift_derive(f_list[t], Int(k)), f1_inv);
      if (!in_pg0_star(d)) ok = false;
      cand.push_back(std::move(d));
    }
    // Distinctness is required across pairs with different source elements,
    // both within this shift and against previously accepted shifts.
    for (size_t t = 0; t + 1 < cand.size() && ok; ++t)
      for (size_t s2 = t + 1; s2 < cand.size() && ok; ++s2)
        if (cand[t] == cand[s2]) ok = false;
    for (const auto& prev : accepted)
      for (size_t t = 0; t < cand.size() && ok; ++t)
        for (size_t s2 = 0; s2 < prev.size() && ok; ++s2)
          if (t != s2 && cand[t] == prev[s2]) ok = false;
    if (!ok) continue;
    ks.emplace_back(k);
    accepted.push_back(std::move(cand));
  }
  if (ks.size() != static_cast<size_t>(ell) + 1)
    throw SearchExhausted("found only " + std::to_string(ks.size()) + " of " +
                          std::to_string(ell + 1) + " shifts within bound " +
                          std::to_string(search_bound));
  return ks;
}

} // namespace nilpet

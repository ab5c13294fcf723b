#include "nilpet/pet.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace nilpet {

PolySystem::PolySystem(std::vector<GammaPolynomial> elements) : elems_(std::move(elements)) {
  for (size_t i = 1; i < elems_.size(); ++i)
    if (!same_model(elems_[0].model(), elems_[i].model()))
      throw ModelMismatch("system elements use different group models");
  for (size_t i = 0; i < elems_.size(); ++i)
    for (size_t j = i + 1; j < elems_.size(); ++j)
      if (elems_[i] == elems_[j])
        throw DuplicateElement("system elements must be pairwise distinct canonical forms");
}

WeightVector weight_vector(const PolySystem& A) {
  std::map<Weight, std::set<Rat>> classes;
  for (const GammaPolynomial& g : A.elements()) {
    if (is_identity(g)) continue;
    classes[weight(g)].insert(leading_coefficient(g));
  }
  WeightVector wv;
  for (const auto& [w, coeffs] : classes)
    wv.entries.push_back({w, static_cast<int>(coeffs.size())});
  return wv;
}

std::string format_weight_vector(const WeightVector& wv) {
  std::string out = "(";
  for (size_t i = 0; i < wv.entries.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(wv.entries[i].multiplicity) + format_weight(wv.entries[i].w);
  }
  return out + ")";
}

bool precedes(const WeightVector& a, const WeightVector& b) {
  // Walk the union of weights downward; the first differing multiplicity
  // decides.
  auto ia = a.entries.rbegin();
  auto ib = b.entries.rbegin();
  while (ia != a.entries.rend() || ib != b.entries.rend()) {
    Weight top{0, 0};
    if (ia != a.entries.rend()) top = ia->w;
    if (ib != b.entries.rend() && ib->w > top) top = ib->w;
    int ca = 0, cb = 0;
    if (ia != a.entries.rend() && ia->w == top) ca = (ia++)->multiplicity;
    if (ib != b.entries.rend() && ib->w == top) cb = (ib++)->multiplicity;
    if (ca != cb) return ca < cb;
  }
  return false;
}

bool precedes(const PolySystem& a, const PolySystem& b) {
  return precedes(weight_vector(a), weight_vector(b));
}

namespace {

// Validates h against the minimality requirement shared by both rules.
void require_minimal(const PolySystem& A, const GammaPolynomial& h, const char* role) {
  if (is_identity(h)) throw IdentityElement(std::string(role) + " must not be the identity");
  bool member = false;
  for (const GammaPolynomial& g : A.elements())
    if (g == h) {
      member = true;
      break;
    }
  if (!member) throw NotMinimal(std::string(role) + " must be an element of the system");
  const Weight wh = weight(h);
  for (const GammaPolynomial& g : A.elements())
    if (!is_identity(g) && weight(g) < wh)
      throw NotMinimal(std::string(role) + " does not have minimal weight in the system");
}

std::vector<GammaPolynomial> dedup(std::vector<GammaPolynomial> v) {
  std::vector<GammaPolynomial> out;
  for (GammaPolynomial& g : v) {
    bool seen = false;
    for (const GammaPolynomial& h : out)
      if (g == h) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(g));
  }
  return out;
}

} // namespace

PolySystem quotient_system(const PolySystem& A, const GammaPolynomial& h) {
  require_minimal(A, h, "the quotient element");
  const GammaPolynomial h_inv = gp_inverse(h);
  std::vector<GammaPolynomial> out;
  out.reserve(A.size());
  for (const GammaPolynomial& g : A.elements()) out.push_back(gp_multiply(g, h_inv));
  return PolySystem(dedup(std::move(out)));
}

PolySystem proof_step_system(const PolySystem& A, const GammaPolynomial& f,
                             const std::vector<Int>& shifts) {
  require_minimal(A, f, "the reference element");
  if (shifts.empty()) throw std::invalid_argument("at least one shift is required");
  const GammaPolynomial f_inv = gp_inverse(f);
  std::vector<GammaPolynomial> forms;
  forms.reserve(A.size() * shifts.size());
  for (const GammaPolynomial& ft : A.elements())
    for (const Int& k : shifts) {
      GammaPolynomial d = gp_multiply(shift_derive(ft, k), f_inv);
      if (!is_identity(d)) forms.push_back(std::move(d));
    }
  PolySystem derived(dedup(std::move(forms)));
  if (!precedes(derived, A))
    throw PrecedenceViolation("derived system does not precede the source system");
  return derived;
}

namespace {

std::vector<GammaPolynomial> strip_identities(const std::vector<GammaPolynomial>& v) {
  std::vector<GammaPolynomial> out;
  out.reserve(v.size());
  for (const GammaPolynomial& g : v)
    if (!is_identity(g)) out.push_back(g);
  return out;
}

size_t minimal_index(const std::vector<GammaPolynomial>& v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    const Weight wi = weight(v[i]);
    const Weight wb = weight(v[best]);
    if (wi < wb || (wi == wb && compare_canonical(v[i], v[best]) < 0)) best = i;
  }
  return best;
}

} // namespace

ReductionTrace pet_reduce(const PolySystem& A, const ReduceOptions& opts) {
  const WeightVector terminal_wv{{WeightVectorEntry{Weight{1, 1}, 1}}};
  ReductionTrace trace;
  std::vector<GammaPolynomial> cur = strip_identities(A.elements());
  for (;;) {
    PolySystem sys(cur);
    WeightVector wv = weight_vector(sys);
    if (cur.empty() || wv == terminal_wv) {
      trace.steps.push_back({sys, wv, "stop", std::nullopt, {}});
      trace.terminal = std::move(sys);
      return trace;
    }
    if (trace.steps.size() >= opts.max_steps)
      throw DegreeGuardExceeded("reduction exceeded " + std::to_string(opts.max_steps) +
                                " steps");
    const GammaPolynomial f = cur[minimal_index(cur)];
    TraceStep step{sys, wv, "", print_gpoly(f), {}};
    PolySystem next;
    if (opts.rule == ReduceRule::quotient) {
      step.rule = "quotient";
      next = quotient_system(sys, f);
    } else {
      step.rule = "proof_step";
      std::vector<GammaPolynomial> fs;
      fs.reserve(cur.size());
      fs.push_back(f);
      for (const GammaPolynomial& g : cur)
        if (!(g == f)) fs.push_back(g);
      step.shifts = shift_gap_sequence(fs, opts.ell, opts.shift_bound);
      next = proof_step_system(sys, f, step.shifts);
    }
    std::vector<GammaPolynomial> next_elems = strip_identities(next.elements());
    if (!precedes(weight_vector(PolySystem(next_elems)), wv))
      throw PrecedenceViolation("weight vector failed to decrease at step " +
                                std::to_string(trace.steps.size()));
    if (next_elems.size() > opts.max_size)
      throw DegreeGuardExceeded("reduction produced a system of size " +
                                std::to_string(next_elems.size()));
    trace.steps.push_back(std::move(step));
    cur = std::move(next_elems);
  }
}

nlohmann::json trace_to_json(const ReductionTrace& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TraceStep& step : t.steps) {
    nlohmann::json js;
    js["system"] = nlohmann::json::array();
    for (const GammaPolynomial& g : step.system.elements())
      js["system"].push_back(print_gpoly(g));
    js["weight_vector"] = nlohmann::json::array();
    for (const WeightVectorEntry& e : step.wv.entries)
      js["weight_vector"].push_back({e.w.l, e.w.k, e.multiplicity});
    js["rule"] = step.rule;
    if (step.minimal) js["minimal"] = *step.minimal;
    if (!step.shifts.empty()) {
      nlohmann::json sh = nlohmann::json::array();
      for (const Int& k : step.shifts) sh.push_back(k.get_si());
      js["shifts"] = sh;
    }
    arr.push_back(std::move(js));
  }
  return arr;
}

} // namespace nilpet

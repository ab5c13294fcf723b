// Acceptance suite: nine scripted checks, one pass/fail line each, nonzero
// exit if any check fails. Tolerances and time budgets are pinned here.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nilpet/dynsys.hpp"
#include "nilpet/gpoly.hpp"
#include "nilpet/nilgroup.hpp"
#include "nilpet/pet.hpp"
#include "nilpet/zsets.hpp"
#include "support.hpp"

using namespace nilpet;

namespace {

struct CheckFailure : std::runtime_error {
  explicit CheckFailure(const std::string& w) : std::runtime_error(w) {}
};

inline void NEED(bool cond, const std::string& msg) {
  if (!cond) throw CheckFailure(msg);
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.0f ms", ms);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
std::string weights_and_example_vector() {
  const Model a1 = abelian_model(1), a2 = abelian_model(2), a3 = abelian_model(3);
  NEED(weight(parse_gpoly("S1^{n}", a1)) == Weight{1, 1}, "w(S1^n) != (1,1)");
  NEED(weight(parse_gpoly("S1^{n^2} S2^{n^3}", a2)) == Weight{2, 3},
       "w(S1^{n^2} S2^{n^3}) != (2,3)");
  NEED(weight(parse_gpoly("S1^{n^6} S2^{n^6}", a2)) == Weight{2, 6},
       "w(S1^{n^6} S2^{n^6}) != (2,6)");

  const GammaPolynomial e1 = parse_gpoly("S1^{n} S3^{n^2}", a3);
  const GammaPolynomial e2 = parse_gpoly("S3^{n^2+9n}", a3);
  const GammaPolynomial e3 = parse_gpoly("S1^{n^12} S2^{3n} S3^{n^2+n}", a3);
  NEED(equivalent(e1, e2) && equivalent(e2, e3) && equivalent(e1, e3),
       "equivalence chain broken");

  std::vector<GammaPolynomial> elems;
  for (const char* t :
       {"S1^{n}", "S1^{2n}", "S1^{n^2}", "S1^{n} S2^{2n^2}", "S1^{n^3+n^2} S2^{2n^2+n}",
        "S1^{n^5} S2^{2n^2+2n}", "S1^{n^3} S2^{2n^2+8n}", "S1^{n^9+n^5+n} S2^{n^6+n^2}",
        "S2^{2n^6+n^2}", "S1^{n} S2^{3n^6+n^2}"})
    elems.push_back(parse_gpoly(t, a2));
  const WeightVector wv = weight_vector(PolySystem(std::move(elems)));
  NEED(format_weight_vector(wv) == "(2(1,1), 1(1,2), 1(2,2), 3(2,6))",
       "example weight vector is " + format_weight_vector(wv));
  return "weights, equivalences and the 10-element weight vector are exact";
}

// ---------------------------------------------------------------- criterion 2
std::string ordering_chain() {
  auto wv = [](std::initializer_list<std::pair<Weight, int>> entries) {
    WeightVector out;
    for (const auto& [w, c] : entries) out.entries.push_back({w, c});
    return out;
  };
  const std::vector<WeightVector> chain = {
      wv({{{1, 1}, 1}}),
      wv({{{1, 1}, 2}}),
      wv({{{1, 1}, 3}}),
      wv({{{1, 2}, 1}}),
      wv({{{1, 1}, 1}, {{1, 2}, 1}}),
      wv({{{1, 1}, 2}, {{1, 2}, 1}}),
      wv({{{1, 1}, 3}, {{1, 2}, 1}}),
      wv({{{1, 2}, 2}}),
      wv({{{1, 1}, 1}, {{1, 2}, 2}}),
      wv({{{1, 1}, 2}, {{1, 2}, 2}}),
      wv({{{1, 1}, 3}, {{1, 2}, 2}}),
      wv({{{1, 1}, 3}, {{1, 2}, 3}}),
      wv({{{1, 3}, 1}}),
      wv({{{1, 1}, 1}, {{1, 3}, 1}}),
      wv({{{1, 1}, 3}, {{1, 2}, 3}, {{1, 3}, 1}}),
      wv({{{1, 3}, 2}}),
      wv({{{1, 1}, 1}, {{1, 2}, 1}, {{1, 3}, 2}, {{1, 4}, 1}}),
  };
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    NEED(precedes(chain[i], chain[i + 1]),
         "pair " + std::to_string(i) + " fails: " + format_weight_vector(chain[i]) +
             " should precede " + format_weight_vector(chain[i + 1]));
    NEED(!precedes(chain[i + 1], chain[i]),
         "pair " + std::to_string(i) + " holds in reverse too");
  }
  return std::to_string(chain.size() - 1) + " consecutive comparisons hold, none reversed";
}

// ---------------------------------------------------------------- criterion 3
std::string matrix_oracle() {
  std::mt19937_64 rng(93001);
  size_t checked = 0;
  for (const Model& m : {heisenberg_model(), ut4_model()}) {
    std::uniform_int_distribution<int> coord(-8, 8), expo(-10, 10);
    for (int trial = 0; trial < 5000; ++trial) {
      MalcevExponents a(static_cast<size_t>(m->s)), b(a), c(a);
      for (auto& x : a) x = coord(rng);
      for (auto& x : b) x = coord(rng);
      for (auto& x : c) x = coord(rng);
      const Mat Ma = to_matrix(m, a), Mb = to_matrix(m, b), Mc = to_matrix(m, c);
      NEED(to_matrix(m, multiply(m, a, b)) == Ma * Mb, "product disagrees with matrices");
      const MalcevExponents ab_c = multiply(m, multiply(m, a, b), c);
      NEED(ab_c == multiply(m, a, multiply(m, b, c)), "coordinate product not associative");
      NEED(to_matrix(m, ab_c) == Ma * Mb * Mc, "triple product disagrees with matrices");
      NEED(to_matrix(m, inverse(m, a)) == Ma.inverse_unitriangular(),
           "inverse disagrees with matrices");
      const Int n = expo(rng);
      NEED(to_matrix(m, power(m, a, n)) == Ma.pow(n), "power disagrees with matrices");
      ++checked;
    }
  }
  return std::to_string(checked) + " random pairs/triples agree with the matrix oracle";
}

// ---------------------------------------------------------------- criterion 4
std::string evaluation_homomorphism() {
  std::mt19937_64 rng(94001);
  size_t pairs = 0;
  for (const Model& m : {abelian_model(1), abelian_model(2), abelian_model(3),
                         heisenberg_model(), ut4_model()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const GammaPolynomial g = testsupport::random_pg0_star(rng, m, 3);
      const GammaPolynomial h = testsupport::random_pg0_star(rng, m, 3);
      const GammaPolynomial gh = gp_multiply(g, h);
      for (Int n = -20; n <= 20; ++n)
        if (evaluate(gh, n) != multiply(m, evaluate(g, n), evaluate(h, n)))
          throw CheckFailure("evaluate(g h, n) != evaluate(g, n) evaluate(h, n) at n = " +
                             n.get_str());
      ++pairs;
    }
  }
  return std::to_string(pairs) + " pairs x n in [-20,20] commute with evaluation";
}

// ---------------------------------------------------------------- criterion 5
std::string lemma_properties() {
  std::mt19937_64 rng(95001);
  const std::vector<Model> models = {abelian_model(3), heisenberg_model()};
  std::uniform_int_distribution<int> shift(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const Model& m = models[static_cast<size_t>(trial) % models.size()];
    const GammaPolynomial g = testsupport::random_pg0_star(rng, m, 4);
    const GammaPolynomial h = testsupport::random_pg0_star(rng, m, 2);
    NEED(equivalent(shift_derive(g, shift(rng)), g), "shift derivation broke equivalence");
    NEED(equivalent(conjugate(g, h), g), "conjugation broke equivalence");
  }

  const std::vector<PolySystem> corpus = testsupport::system_corpus();
  NEED(corpus.size() == 200, "corpus size mismatch");
  for (const PolySystem& A : corpus) {
    const auto& es = A.elements();
    size_t best = 0;
    for (size_t i = 1; i < es.size(); ++i)
      if (weight(es[i]) < weight(es[best]) ||
          (weight(es[i]) == weight(es[best]) && compare_canonical(es[i], es[best]) < 0))
        best = i;
    NEED(precedes(quotient_system(A, es[best]), A), "quotient did not strictly decrease");
  }
  return "100 equivalence instances and 200 quotient reductions, zero violations";
}

// ---------------------------------------------------------------- criterion 6
std::string pet_termination() {
  ReduceOptions showcase;
  showcase.rule = ReduceRule::proof_step;
  const PolySystem squares(
      {parse_gpoly("T^{n^2}", abelian_model(1)), parse_gpoly("T^{2n^2}", abelian_model(1))});
  ReductionTrace t = pet_reduce(squares, showcase);
  NEED(format_weight_vector(t.steps.front().wv) == "(2(1,2))",
       "showcase initial vector is " + format_weight_vector(t.steps.front().wv));
  NEED(t.steps.back().rule == "stop", "showcase did not stop");

  size_t steps_total = t.steps.size();
  const std::vector<PolySystem> corpus = testsupport::system_corpus();
  for (ReduceRule rule : {ReduceRule::quotient, ReduceRule::proof_step}) {
    ReduceOptions opts;
    opts.rule = rule;
    opts.ell = 0;
    for (const PolySystem& A : corpus) {
      const ReductionTrace tr = pet_reduce(A, opts); // throws on any violation
      NEED(tr.steps.back().rule == "stop", "reduction did not stop");
      for (size_t i = 1; i < tr.steps.size(); ++i)
        NEED(precedes(tr.steps[i].wv, tr.steps[i - 1].wv), "weight vector failed to decrease");
      steps_total += tr.steps.size();
    }
  }
  return "both rules terminate on 200 systems + showcase, " + std::to_string(steps_total) +
         " strictly decreasing steps";
}

// ---------------------------------------------------------------- criterion 7
std::string subshift_dynamics() {
  std::ostringstream detail;
  const SubstitutionSystem sys5 = SubstitutionSystem::chacon(100000);
  const SubstitutionSystem sys = SubstitutionSystem::chacon(1000000);
  NEED(sys.word().size() >= 1000000, "prefix is too short");

  // (a) every admissible 4-word recurs; the word set is stable across prefixes
  const std::vector<std::string> words4 = sys.admissible_words(4);
  NEED(words4 == sys5.admissible_words(4), "admissible 4-word set changed with prefix length");
  int64_t max_gap4 = 0;
  for (const std::string& w : words4) {
    const std::vector<int64_t> pos = occurrences(sys, Cylinder(sys, w)).members();
    NEED(pos.size() >= 2, "4-word '" + w + "' does not recur");
    for (size_t i = 1; i < pos.size(); ++i) max_gap4 = std::max(max_gap4, pos[i] - pos[i - 1]);
  }
  detail << "(a) " << words4.size() << " words, max recurrence gap " << max_gap4;

  // (b) N(U,V) thickly syndetic at (3, 500) for all admissible 2-word pairs
  const std::vector<std::string> words2 = sys.admissible_words(2);
  int64_t worst_start_gap = 0;
  for (const std::string& up : words2)
    for (const std::string& vp : words2) {
      const Cylinder u(sys, up), v(sys, vp);
      const ReturnSet rs = return_set(sys, u, {{IntPoly::n(), v}}, 0, 10000);
      NEED(rs.undecided.count() == 0, "N(" + up + "," + vp + ") left the prefix");
      const Verdict ts = is_thickly_syndetic_at(rs.members, 3, 500);
      NEED(ts.value, "N(" + up + "," + vp + ") not thickly syndetic at (3,500)");
      worst_start_gap = std::max(worst_start_gap, ts.witness);
    }
  detail << "; (b) 9 pairs, max run-start gap " << worst_start_gap;

  // (c) coverage of admissible pairs under (n, 2n)
  const CoverageReport cov = density_experiment(
      sys, {IntPoly::monomial(1, 1), IntPoly::monomial(1, 2)}, 2, -10000, 10000, 50, 12345);
  NEED(cov.full_count * 10 >= cov.bases.size() * 9,
       "coverage reached 100% on only " + std::to_string(cov.full_count) + "/50 bases");
  detail << "; (c) " << cov.full_count << "/50 bases fully covered";

  // (d) return sets of (n, 2n, 3n) over 1-word cylinders are syndetic
  const std::vector<std::string> words1 = sys.admissible_words(1);
  NEED(words1.size() == 2, "unexpected alphabet");
  int64_t worst_gap = 0;
  const std::vector<IntPoly> polys = {IntPoly::monomial(1, 1), IntPoly::monomial(1, 2),
                                      IntPoly::monomial(1, 3)};
  for (const std::string& up : words1)
    for (const std::string& v1 : words1)
      for (const std::string& v2 : words1)
        for (const std::string& v3 : words1) {
          const Cylinder u(sys, up);
          const ReturnSet rs = return_set(
              sys, u,
              {{polys[0], Cylinder(sys, v1)}, {polys[1], Cylinder(sys, v2)},
               {polys[2], Cylinder(sys, v3)}},
              0, 10000);
          const Verdict syn = is_syndetic_at(rs.members, 2000);
          NEED(syn.value, "return set for U=" + up + " V=(" + v1 + "," + v2 + "," + v3 +
                              ") has gap " + std::to_string(syn.witness));
          worst_gap = std::max(worst_gap, syn.witness);
        }
  detail << "; (d) 16 cylinder choices, max gap " << worst_gap << " < 2000";
  return detail.str();
}

// ---------------------------------------------------------------- criterion 8
std::string thickly_syndetic_filter() {
  std::mt19937_64 rng(98001);
  std::uniform_int_distribution<int64_t> Ld(1, 6);
  const int64_t lo = 0, hi = 30000;
  auto make_blocks = [&](int64_t L, int64_t G) {
    const int64_t max_gap = std::max<int64_t>(1, std::min(G - L, (2 * G - 3 * L) / 4));
    std::uniform_int_distribution<int64_t> bd(2 * G + 2 * L, 4 * G + 4 * L), gd(1, max_gap);
    WindowSet s(lo, hi);
    int64_t n = lo;
    while (n <= hi) {
      const int64_t len = bd(rng);
      for (int64_t i = 0; i < len && n + i <= hi; ++i) s.insert(n + i);
      n += len + gd(rng);
    }
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int64_t L = Ld(rng);
    std::uniform_int_distribution<int64_t> Gd(2 * L + 2, 2 * L + 30);
    const int64_t G = Gd(rng);
    const WindowSet a = make_blocks(L, G), b = make_blocks(L, G);
    NEED(is_thickly_syndetic_at(a, L, G).value, "left factor not thickly syndetic");
    NEED(is_thickly_syndetic_at(b, L, G).value, "right factor not thickly syndetic");
    NEED(is_thickly_syndetic_at(intersect(a, b), L, 2 * G + 2 * L).value,
         "intersection not thickly syndetic at (L, 2G+2L) for L=" + std::to_string(L) +
             " G=" + std::to_string(G));
  }
  return "100 random intersections stay thickly syndetic at (L, 2G+2L)";
}

// ---------------------------------------------------------------- criterion 9
std::string cli_contract() {
  std::mt19937_64 rng(99001);
  for (int trial = 0; trial < 500; ++trial) {
    const Model m = abelian_model(1 + trial % 3);
    const GammaPolynomial g = testsupport::random_pg0_star(rng, m, 4);
    NEED(parse_gpoly(print_gpoly(g), m) == g, "round trip failed on " + print_gpoly(g));
  }

  const std::string dens =
      "density --poly n --poly 2n --w 2 --window -2000:2000 --samples 8 --seed 5";
  const testsupport::CliResult r1 = testsupport::run_cli(dens);
  const testsupport::CliResult r2 = testsupport::run_cli(dens);
  NEED(r1.exit_code == 0 && r2.exit_code == 0, "density run failed");
  NEED(r1.output == r2.output, "reports differ between identical seeded runs");

  const std::vector<std::pair<std::string, int>> cases = {
      {"weight \"T^{n^2}\"", 0},
      {"weight \"T^{n\"", 2},                                          // parse error
      {"weight \"S2^{n} S1^{n}\" --model abelian:2", 2},               // canonical order
      {"weight \"T^{n}\" --no-such-flag", 2},                          // argument error
      {"pet-reduce \"T^{n}\" \"T^{n}\"", 3},                           // duplicate element
      {"returns --u 11 --v 0 --poly n --window 0:5 --min-length 100", 3}, // inadmissible
      {"nested --poly n --v 0 --r 1000000 --ell 0 --kmax 5 --min-length 100", 4}, // exhausted
  };
  for (const auto& [args, want] : cases) {
    const int got = testsupport::run_cli(args).exit_code;
    NEED(got == want, "exit code for '" + args + "' is " + std::to_string(got) + ", expected " +
                          std::to_string(want));
  }
  return "500 round trips, byte-identical seeded reports, exit codes 0/2/3/4 confirmed";
}

struct CriterionSpec {
  int index;
  std::string label;
  double budget_ms;
  std::function<std::string()> run;
};

} // namespace

int main() {
  const std::vector<CriterionSpec> criteria = {
      {1, "worked examples: weights, equivalences, example weight vector", 1000,
       weights_and_example_vector},
      {2, "ordering chain under precedes", 1000, ordering_chain},
      {3, "coordinate arithmetic vs matrix oracle", 10000, matrix_oracle},
      {4, "evaluation commutes with symbolic products", 30000, evaluation_homomorphism},
      {5, "equivalence lemmas and quotient descent", 60000, lemma_properties},
      {6, "reduction terminates with strict descent", 120000, pet_termination},
      {7, "subshift recurrence, mixing probes and coverage", 300000, subshift_dynamics},
      {8, "thickly syndetic sets form a filter", 10000, thickly_syndetic_filter},
      {9, "CLI round trip, determinism and exit codes", 30000, cli_contract},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && ms > c.budget_ms) {
      ok = false;
      detail = "exceeded time budget of " + fmt_ms(c.budget_ms);
    }
    failures += ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s: %s [%s]\n", ok ? "PASS" : "FAIL", c.index,
                c.label.c_str(), detail.c_str(), fmt_ms(ms).c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

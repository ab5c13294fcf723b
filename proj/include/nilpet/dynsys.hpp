// Finite approximations of substitution subshifts (Chacon as the reference
// system) and return-set / density experiments over them. All scans read a
// fixed generated prefix of the substitution fixed point; polynomial
// displacements that leave the prefix are tracked as undecided, never as
// gaps.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nilpet/intpoly.hpp"
#include "nilpet/zsets.hpp"

namespace nilpet {

struct InadmissiblePattern : std::runtime_error {
  explicit InadmissiblePattern(const std::string& w) : std::runtime_error(w) {}
};
struct NonDegenerate : std::runtime_error {
  explicit NonDegenerate(const std::string& w) : std::runtime_error(w) {}
};
struct WindowExhausted : std::runtime_error {
  explicit WindowExhausted(const std::string& w) : std::runtime_error(w) {}
};

class SubstitutionSystem {
 public:
  // Applies `rules` to `seed` until the word reaches min_length; verifies the
  // word is a prefix of one further application.
  static SubstitutionSystem generate(const std::vector<char>& alphabet,
                                     const std::map<char, std::string>& rules, char seed,
                                     size_t min_length);
  // 0 -> 0010, 1 -> 1.
  static SubstitutionSystem chacon(size_t min_length = 1000000);
  // { "alphabet": ["0","1"], "rules": {"0":"0010","1":"1"}, "seed": "0",
  //   "min_length": N }
  static SubstitutionSystem from_json_text(const std::string& text);
  static SubstitutionSystem load_json(const std::string& path);

  const std::string& word() const { return word_; }
  const std::vector<char>& alphabet() const { return alphabet_; }
  bool admissible(const std::string& pattern) const;
  // Distinct length-w factors of the word, sorted.
  std::vector<std::string> admissible_words(size_t w) const;

 private:
  std::vector<char> alphabet_;
  std::map<char, std::string> rules_;
  char seed_ = 0;
  std::string word_;
};

// Cylinder set anchored at coordinate 0; the pattern must occur in the word.
class Cylinder {
 public:
  Cylinder(const SubstitutionSystem& sys, std::string pattern); // throws InadmissiblePattern
  const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
};

// Positions m in [0, N-|pattern|] where the pattern occurs.
WindowSet occurrences(const SubstitutionSystem& sys, const Cylinder& c);

struct ReturnSet {
  WindowSet members;   // n verified to have a witness position
  WindowSet undecided; // n whose valid position range is empty on the prefix
  ReturnSet(WindowSet m, WindowSet u) : members(std::move(m)), undecided(std::move(u)) {}
};

// { n : exists m with the word matching U at m and V_i at m + p_i(n) for all
// i }, scanned over n in [n_lo, n_hi].
ReturnSet return_set(const SubstitutionSystem& sys, const Cylinder& U,
                     const std::vector<std::pair<IntPoly, Cylinder>>& pairs, int64_t n_lo,
                     int64_t n_hi);

struct CoverageBase {
  int64_t base = 0;
  std::vector<uint8_t> hits; // k-tuple bitmap over admissible_words(w)^k
  double fraction = 0.0;
  int64_t first_full_n = -1; // |n| at which coverage completed, -1 if never
  int64_t skipped = 0;       // n skipped because a position left the word
};

struct CoverageReport {
  size_t k = 0, w = 0;
  std::vector<std::string> words; // admissible w-words, sorted
  std::vector<CoverageBase> bases;
  double mean_fraction = 0.0;
  size_t full_count = 0; // bases reaching 100%
};

// For sampled base positions x, which k-tuples of admissible w-words are hit
// by (word at x+p_1(n), ..., word at x+p_k(n)) as n sweeps the window by
// increasing |n|. Polynomials must be in P_0* with pairwise nonconstant
// differences.
CoverageReport density_experiment(const SubstitutionSystem& sys, const std::vector<IntPoly>& polys,
                                  size_t w, int64_t n_lo, int64_t n_hi, size_t samples,
                                  uint64_t seed);

struct ProbeReport {
  ClassificationReport classification;
  size_t undecided = 0;
};

// N(U,V) via return_set with p(n) = n, classified at (L,G).
ProbeReport weak_mixing_probe(const SubstitutionSystem& sys, const Cylinder& U, const Cylinder& V,
                              int64_t n_lo, int64_t n_hi, int64_t L, int64_t G);

struct Refinement {
  int64_t offset = 0;  // leftmost constrained coordinate
  std::string pattern; // letters on [offset, offset + |pattern|)
};

struct NestedReturn {
  std::vector<int64_t> ks;
  // chain[step][i] is V_i's refinement after choosing k_step.
  std::vector<std::vector<Refinement>> chain;
};

// Greedy instantiation of the nested-return construction: |k_0| > r(0),
// |k_j| > |k_{j-1}| + r(|k_{j-1}|), refining each V_i by the constraint
// word[m + p_i(k_j) - j ..] = V_i at a common witness occurrence. Fails with
// WindowExhausted when no admissible refinement exists within the word.
NestedReturn nested_return_construction(const SubstitutionSystem& sys,
                                        const std::vector<IntPoly>& polys,
                                        const std::vector<Cylinder>& Vs, const IntPoly& r, int ell,
                                        int64_t k_max);

nlohmann::json coverage_to_json(const CoverageReport& r);
nlohmann::json nested_to_json(const NestedReturn& r);

} // namespace nilpet

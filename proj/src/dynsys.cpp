#include "nilpet/dynsys.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nilpet {

// --- substitution systems ------------------------------------------------------

namespace {

std::string apply_rules(const std::map<char, std::string>& rules, const std::string& w) {
  std::string out;
  out.reserve(w.size() * 4);
  for (char c : w) out += rules.at(c);
  return out;
}

} // namespace

SubstitutionSystem SubstitutionSystem::generate(const std::vector<char>& alphabet,
                                                const std::map<char, std::string>& rules,
                                                char seed, size_t min_length) {
  if (alphabet.empty()) throw std::invalid_argument("alphabet is empty");
  const std::set<char> letters(alphabet.begin(), alphabet.end());
  if (letters.size() != alphabet.size())
    throw std::invalid_argument("alphabet letters must be distinct");
  if (!letters.count(seed)) throw std::invalid_argument("seed letter is not in the alphabet");
  for (char c : alphabet) {
    const auto it = rules.find(c);
    if (it == rules.end())
      throw std::invalid_argument(std::string("no rule for letter '") + c + "'");
    if (it->second.empty())
      throw std::invalid_argument(std::string("rule for '") + c + "' is empty");
    for (char d : it->second)
      if (!letters.count(d))
        throw std::invalid_argument(std::string("rule for '") + c +
                                    "' uses a letter outside the alphabet");
  }
  SubstitutionSystem sys;
  sys.alphabet_ = alphabet;
  sys.rules_ = rules;
  sys.seed_ = seed;
  std::string w(1, seed);
  while (w.size() < std::max<size_t>(min_length, 1)) {
    std::string next = apply_rules(rules, w);
    if (next.size() <= w.size())
      throw std::invalid_argument("substitution does not grow from the seed");
    w = std::move(next);
  }
  const std::string image = apply_rules(rules, w);
  if (image.compare(0, w.size(), w) != 0)
    throw std::invalid_argument("generated word is not a prefix of its image");
  sys.word_ = std::move(w);
  return sys;
}

SubstitutionSystem SubstitutionSystem::chacon(size_t min_length) {
  return generate({'0', '1'}, {{'0', "0010"}, {'1', "1"}}, '0', min_length);
}

SubstitutionSystem SubstitutionSystem::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<char> alphabet;
  for (const auto& a : j.at("alphabet")) {
    const std::string s = a.get<std::string>();
    if (s.size() != 1) throw std::invalid_argument("alphabet entries must be single letters");
    alphabet.push_back(s[0]);
  }
  std::map<char, std::string> rules;
  for (const auto& [key, val] : j.at("rules").items()) {
    if (key.size() != 1) throw std::invalid_argument("rule keys must be single letters");
    rules[key[0]] = val.get<std::string>();
  }
  const std::string seed = j.at("seed").get<std::string>();
  if (seed.size() != 1) throw std::invalid_argument("seed must be a single letter");
  const size_t min_length = j.at("min_length").get<size_t>();
  return generate(alphabet, rules, seed[0], min_length);
}

SubstitutionSystem SubstitutionSystem::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open substitution file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

bool SubstitutionSystem::admissible(const std::string& pattern) const {
  return word_.find(pattern) != std::string::npos;
}

std::vector<std::string> SubstitutionSystem::admissible_words(size_t w) const {
  std::set<std::string> seen;
  if (w >= 1 && w <= word_.size())
    for (size_t m = 0; m + w <= word_.size(); ++m) seen.insert(word_.substr(m, w));
  return {seen.begin(), seen.end()};
}

Cylinder::Cylinder(const SubstitutionSystem& sys, std::string pattern)
    : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw InadmissiblePattern("cylinder pattern is empty");
  if (!sys.admissible(pattern_))
    throw InadmissiblePattern("pattern '" + pattern_ + "' does not occur in the word");
}

// --- occurrence bitsets ----------------------------------------------------------

namespace {

struct Bits {
  std::vector<uint64_t> w; // two zero words of padding at the end
  uint64_t nbits = 0;

  explicit Bits(uint64_t n) : w(static_cast<size_t>((n + 63) / 64 + 2), 0), nbits(n) {}
  void set(uint64_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
  bool get(uint64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
};

// 64 membership bits starting at position pos; positions past the end read 0.
uint64_t fetch64(const Bits& b, uint64_t pos) {
  const size_t i = static_cast<size_t>(pos >> 6);
  const unsigned off = static_cast<unsigned>(pos & 63);
  if (i + 1 >= b.w.size()) return 0;
  return off ? (b.w[i] >> off) | (b.w[i + 1] << (64 - off)) : b.w[i];
}

Bits occurrence_bits(const std::string& word, const std::string& pattern) {
  const uint64_t n = word.size() >= pattern.size() ? word.size() - pattern.size() + 1 : 0;
  Bits b(n);
  size_t m = word.find(pattern);
  while (m != std::string::npos) {
    b.set(m);
    m = word.find(pattern, m + 1);
  }
  return b;
}

} // namespace

WindowSet occurrences(const SubstitutionSystem& sys, const Cylinder& c) {
  const Bits b = occurrence_bits(sys.word(), c.pattern());
  WindowSet out(0, static_cast<int64_t>(b.nbits) - 1);
  for (uint64_t i = 0; i < b.nbits; ++i)
    if (b.get(i)) out.insert(static_cast<int64_t>(i));
  return out;
}

// --- return sets ------------------------------------------------------------------

ReturnSet return_set(const SubstitutionSystem& sys, const Cylinder& U,
                     const std::vector<std::pair<IntPoly, Cylinder>>& pairs, int64_t n_lo,
                     int64_t n_hi) {
  const std::string& word = sys.word();
  const int64_t N = static_cast<int64_t>(word.size());
  const Bits occ_u = occurrence_bits(word, U.pattern());
  std::vector<Bits> occ_v;
  std::vector<int64_t> v_len;
  occ_v.reserve(pairs.size());
  for (const auto& [p, V] : pairs) {
    occ_v.push_back(occurrence_bits(word, V.pattern()));
    v_len.push_back(static_cast<int64_t>(V.pattern().size()));
  }
  WindowSet members(n_lo, n_hi), undecided(n_lo, n_hi);
  std::vector<int64_t> d(pairs.size());
  for (int64_t n = n_lo; n <= n_hi; ++n) {
    int64_t lo_m = 0;
    int64_t hi_m = N - static_cast<int64_t>(U.pattern().size());
    bool offscale = false;
    for (size_t i = 0; i < pairs.size(); ++i) {
      const Int val = pairs[i].first(Int(n));
      if (!val.fits_slong_p()) {
        offscale = true;
        break;
      }
      d[i] = val.get_si();
      lo_m = std::max(lo_m, -d[i]);
      hi_m = std::min(hi_m, N - v_len[i] - d[i]);
    }
    if (offscale || lo_m > hi_m) {
      undecided.insert(n);
      continue;
    }
    bool found = false;
    for (int64_t m = lo_m; m <= hi_m && !found; m += 64) {
      uint64_t bitsw = fetch64(occ_u, static_cast<uint64_t>(m));
      for (size_t i = 0; i < pairs.size() && bitsw; ++i)
        bitsw &= fetch64(occ_v[i], static_cast<uint64_t>(m + d[i]));
      const int64_t remain = hi_m - m;
      if (remain < 63) bitsw &= (uint64_t(1) << (remain + 1)) - 1;
      found = bitsw != 0;
    }
    if (found) members.insert(n);
  }
  return ReturnSet(std::move(members), std::move(undecided));
}

// --- coverage experiment -----------------------------------------------------------

CoverageReport density_experiment(const SubstitutionSystem& sys, const std::vector<IntPoly>& polys,
                                  size_t w, int64_t n_lo, int64_t n_hi, size_t samples,
                                  uint64_t seed) {
  if (polys.empty()) throw NonDegenerate("at least one polynomial is required");
  for (const IntPoly& p : polys) {
    if (p.is_zero() || p.at_zero() != 0)
      throw NonDegenerate("polynomials must be nonzero with p(0) = 0");
  }
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t j = i + 1; j < polys.size(); ++j)
      if ((polys[i] - polys[j]).degree() < 1)
        throw NonDegenerate("polynomial differences must be nonconstant");
  if (w < 1) throw std::invalid_argument("word length w must be >= 1");
  if (n_lo > n_hi) throw EmptyWindow("empty n window");

  CoverageReport rep;
  rep.k = polys.size();
  rep.w = w;
  rep.words = sys.admissible_words(w);
  const size_t W = rep.words.size();
  if (W == 0) throw EmptyWindow("word shorter than w");
  size_t tuples = 1;
  for (size_t i = 0; i < rep.k; ++i) {
    if (tuples > (size_t(1) << 24) / W)
      throw std::invalid_argument("tuple space too large");
    tuples *= W;
  }
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < W; ++i) index[rep.words[i]] = i;

  // n sweeps the window by increasing |n|, the positive value first.
  std::vector<int64_t> order;
  order.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  const int64_t amax = std::max(std::abs(n_lo), std::abs(n_hi));
  for (int64_t a = 0; a <= amax; ++a) {
    if (a >= n_lo && a <= n_hi) order.push_back(a);
    if (a > 0 && -a >= n_lo && -a <= n_hi) order.push_back(-a);
  }

  const std::string& word = sys.word();
  const int64_t N = static_cast<int64_t>(word.size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> dist(0, N / 2);

  double fraction_sum = 0.0;
  for (size_t s = 0; s < samples; ++s) {
    CoverageBase cb;
    cb.base = dist(rng);
    cb.hits.assign(tuples, 0);
    size_t hit_count = 0;
    size_t usable = 0;
    for (int64_t n : order) {
      size_t idx = 0;
      bool ok = true;
      for (const IntPoly& p : polys) {
        const Int val = p(Int(n));
        int64_t pos = 0;
        if (val.fits_slong_p()) pos = cb.base + val.get_si();
        if (!val.fits_slong_p() || pos < 0 || pos + static_cast<int64_t>(w) > N) {
          ok = false;
          break;
        }
        idx = idx * W + index.find(word.substr(static_cast<size_t>(pos), w))->second;
      }
      if (!ok) {
        ++cb.skipped;
        continue;
      }
      ++usable;
      if (!cb.hits[idx]) {
        cb.hits[idx] = 1;
        if (++hit_count == tuples) {
          cb.first_full_n = std::abs(n);
          break;
        }
      }
    }
    if (usable == 0)
      throw WindowExhausted("base " + std::to_string(cb.base) +
                            " has no usable n in the window");
    cb.fraction = static_cast<double>(hit_count) / static_cast<double>(tuples);
    fraction_sum += cb.fraction;
    if (hit_count == tuples) ++rep.full_count;
    rep.bases.push_back(std::move(cb));
  }
  rep.mean_fraction = samples ? fraction_sum / static_cast<double>(samples) : 0.0;
  return rep;
}

ProbeReport weak_mixing_probe(const SubstitutionSystem& sys, const Cylinder& U, const Cylinder& V,
                              int64_t n_lo, int64_t n_hi, int64_t L, int64_t G) {
  const ReturnSet rs = return_set(sys, U, {{IntPoly::n(), V}}, n_lo, n_hi);
  ProbeReport rep{classify(rs.members, G, L), rs.undecided.count()};
  return rep;
}

// --- nested return times -------------------------------------------------------------

namespace {

struct Constraint {
  int64_t offset;
  std::string pattern;
};

// Finds a word position m realizing every constraint; returns -1 when none
// exists.
int64_t find_witness(const std::string& word, const std::vector<Constraint>& cs) {
  int64_t lo = 0, hi = static_cast<int64_t>(word.size());
  for (const Constraint& c : cs) {
    lo = std::max(lo, -c.offset);
    hi = std::min(hi, static_cast<int64_t>(word.size()) - c.offset -
                          static_cast<int64_t>(c.pattern.size()));
  }
  for (int64_t m = lo; m <= hi; ++m) {
    bool ok = true;
    for (const Constraint& c : cs)
      if (word.compare(static_cast<size_t>(m + c.offset), c.pattern.size(), c.pattern) != 0) {
        ok = false;
        break;
      }
    if (ok) return m;
  }
  return -1;
}

} // namespace

NestedReturn nested_return_construction(const SubstitutionSystem& sys,
                                        const std::vector<IntPoly>& polys,
                                        const std::vector<Cylinder>& Vs, const IntPoly& r, int ell,
                                        int64_t k_max) {
  if (polys.empty() || polys.size() != Vs.size())
    throw std::invalid_argument("need one polynomial per cylinder");
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  const std::string& word = sys.word();
  const size_t d = polys.size();
  std::vector<std::vector<Constraint>> cons(d);
  for (size_t i = 0; i < d; ++i) cons[i] = {{0, Vs[i].pattern()}};

  const auto radius = [&r](int64_t x) -> int64_t {
    const Int v = r(Int(x));
    if (v < 0) return 0;
    if (!v.fits_slong_p()) return std::numeric_limits<int64_t>::max() / 4;
    return v.get_si();
  };

  NestedReturn out;
  int64_t bound = radius(0);
  for (int j = 0; j <= ell; ++j) {
    bool accepted = false;
    for (int64_t k = bound + 1; k <= k_max && !accepted; ++k) {
      std::vector<std::vector<Constraint>> trial = cons;
      std::vector<Refinement> refs(d);
      bool ok = true;
      for (size_t i = 0; i < d && ok; ++i) {
        const Int val = polys[i](Int(k));
        if (!val.fits_slong_p()) {
          ok = false;
          break;
        }
        trial[i].push_back({val.get_si() - j, Vs[i].pattern()});
        const int64_t m = find_witness(word, trial[i]);
        if (m < 0) {
          ok = false;
          break;
        }
        // Consolidate to the contiguous block seen at the witness; it
        // realizes every accumulated constraint at once.
        int64_t min_o = trial[i][0].offset;
        int64_t max_e = trial[i][0].offset + static_cast<int64_t>(trial[i][0].pattern.size());
        for (const Constraint& c : trial[i]) {
          min_o = std::min(min_o, c.offset);
          max_e = std::max(max_e, c.offset + static_cast<int64_t>(c.pattern.size()));
        }
        refs[i] = {min_o, word.substr(static_cast<size_t>(m + min_o),
                                      static_cast<size_t>(max_e - min_o))};
        trial[i] = {{refs[i].offset, refs[i].pattern}};
      }
      if (!ok) continue;
      cons = std::move(trial);
      out.ks.push_back(k);
      out.chain.push_back(std::move(refs));
      bound = k + radius(k);
      accepted = true;
    }
    if (!accepted)
      throw WindowExhausted("no admissible k after " + std::to_string(bound) + " within " +
                            std::to_string(k_max));
  }
  return out;
}

// --- JSON export ------------------------------------------------------------------------

nlohmann::json coverage_to_json(const CoverageReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["w"] = r.w;
  j["words"] = r.words;
  j["mean_fraction"] = r.mean_fraction;
  j["full_count"] = r.full_count;
  nlohmann::json bases = nlohmann::json::array();
  for (const CoverageBase& b : r.bases) {
    size_t hit_count = 0;
    for (uint8_t h : b.hits) hit_count += h;
    nlohmann::json jb;
    jb["base"] = b.base;
    jb["fraction"] = b.fraction;
    jb["first_full_n"] = b.first_full_n;
    jb["skipped"] = b.skipped;
    jb["hit_count"] = hit_count;
    bases.push_back(std::move(jb));
  }
  j["bases"] = bases;
  return j;
}

nlohmann::json nested_to_json(const NestedReturn& r) {
  nlohmann::json j;
  j["ks"] = r.ks;
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& step : r.chain) {
    nlohmann::json refs = nlohmann::json::array();
    for (const Refinement& ref : step) {
      nlohmann::json jr;
      jr["offset"] = ref.offset;
      jr["pattern"] = ref.pattern;
      refs.push_back(std::move(jr));
    }
    chain.push_back(std::move(refs));
  }
  j["chain"] = chain;
  return j;
}

} // namespace nilpet

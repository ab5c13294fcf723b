#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "nilpet/dynsys.hpp"

using namespace nilpet;

namespace {

const SubstitutionSystem& big() {
  static SubstitutionSystem sys = SubstitutionSystem::chacon(1000000);
  return sys;
}

const SubstitutionSystem& small100() {
  static SubstitutionSystem sys = SubstitutionSystem::chacon(100);
  return sys;
}

} // namespace

TEST_CASE("fixed point prefix and length") {
  const SubstitutionSystem& sys = big();
  // word lengths follow l' = 3l + 1 from the seed
  CHECK(sys.word().size() == 2391484);
  CHECK(sys.word().substr(0, 13) == "0010001010010");
  CHECK(small100().word().size() == 121);
  // the generated word is a prefix of the next one
  CHECK(big().word().substr(0, 121) == small100().word());
}

TEST_CASE("admissibility") {
  const SubstitutionSystem& sys = big();
  CHECK(sys.admissible("0"));
  CHECK(sys.admissible("0010"));
  CHECK_FALSE(sys.admissible("11"));
  CHECK_FALSE(sys.admissible("0000"));
  CHECK_FALSE(sys.admissible("2"));
  CHECK(sys.admissible_words(2) == std::vector<std::string>{"00", "01", "10"});
  // low word-complexity: distinct factors grow slowly
  CHECK(sys.admissible_words(4).size() == 7);
}

TEST_CASE("substitution validation") {
  using S = SubstitutionSystem;
  CHECK_THROWS_AS(S::generate({}, {}, '0', 10), std::invalid_argument);
  CHECK_THROWS_AS(S::generate({'0'}, {{'0', "00"}}, '1', 10), std::invalid_argument);
  CHECK_THROWS_AS(S::generate({'0', '1'}, {{'0', "01"}}, '0', 10), std::invalid_argument);
  CHECK_THROWS_AS(S::generate({'0', '1'}, {{'0', "01"}, {'1', "2"}}, '0', 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(S::generate({'0', '1'}, {{'0', "0"}, {'1', "1"}}, '0', 10),
                  std::invalid_argument); // never grows
  // grows but is not a prefix of its own image
  CHECK_THROWS_AS(S::generate({'0', '1'}, {{'0', "10"}, {'1', "1"}}, '0', 10),
                  std::invalid_argument);
}

TEST_CASE("substitution from json") {
  SubstitutionSystem sys = SubstitutionSystem::from_json_text(R"({
    "alphabet": ["0", "1"],
    "rules": {"0": "0010", "1": "1"},
    "seed": "0",
    "min_length": 50
  })");
  CHECK(sys.word().size() == 121);
  CHECK(sys.word() == small100().word());
  CHECK_THROWS_AS(SubstitutionSystem::load_json("/nonexistent/subst.json"),
                  std::invalid_argument);
}

TEST_CASE("cylinders demand admissible patterns") {
  CHECK_THROWS_AS(Cylinder(big(), "11"), InadmissiblePattern);
  CHECK_THROWS_AS(Cylinder(big(), ""), InadmissiblePattern);
  CHECK(Cylinder(big(), "0010").pattern() == "0010");
}

TEST_CASE("occurrences") {
  const SubstitutionSystem& sys = small100();
  WindowSet occ = occurrences(sys, Cylinder(sys, "0"));
  CHECK(occ.lo() == 0);
  CHECK(occ.hi() == 120);
  CHECK(occ.contains(0));
  CHECK(occ.contains(1));
  CHECK_FALSE(occ.contains(2)); // word starts 0010
  // no two consecutive 1s, so gaps between 0s never exceed one
  int64_t prev = 0;
  for (int64_t n : occ.members()) {
    CHECK(n - prev <= 2);
    prev = n;
  }
  // an arbitrary mid-word factor occurs where it was cut out
  std::string probe = sys.word().substr(5, 3);
  CHECK(occurrences(sys, Cylinder(sys, probe)).contains(5));
  // window shrinks with pattern length
  CHECK(occurrences(sys, Cylinder(sys, "0010")).hi() == 117);
}

TEST_CASE("return sets with the zero displacement") {
  const SubstitutionSystem& sys = small100();
  Cylinder u(sys, "0");
  // p = 0 and V = U make every n a member
  ReturnSet r = return_set(sys, u, {{IntPoly(), u}}, 0, 50);
  CHECK(r.members.count() == 51);
  CHECK(r.undecided.count() == 0);
}

TEST_CASE("return sets match the difference set of occurrences") {
  const SubstitutionSystem& sys = small100();
  Cylinder u(sys, "01");
  ReturnSet r = return_set(sys, u, {{IntPoly::n(), u}}, 0, 200);
  // brute force: n is a member iff two occurrences differ by n
  std::vector<int64_t> pos = occurrences(sys, u).members();
  std::set<int64_t> diffs;
  for (int64_t a : pos)
    for (int64_t b : pos)
      if (b >= a) diffs.insert(b - a);
  for (int64_t n = 0; n <= 200; ++n) {
    const bool decided = !r.undecided.contains(n);
    if (decided) CHECK(r.members.contains(n) == (diffs.count(n) > 0));
  }
  CHECK(r.members.contains(0));
  // overlapping occurrences of 01 at distance 1 are impossible
  CHECK_FALSE(r.members.contains(1));
}

TEST_CASE("displacements that leave the prefix are undecided") {
  const SubstitutionSystem& sys = small100(); // word length 121
  Cylinder u(sys, "0");
  ReturnSet r = return_set(sys, u, {{IntPoly::n(), u}}, 0, 130);
  CHECK(r.undecided.members() == std::vector<int64_t>{121, 122, 123, 124, 125, 126, 127, 128,
                                                      129, 130});
  CHECK(r.members.contains(120)); // the word ends in 0
  CHECK_FALSE(r.members.contains(121));
}

TEST_CASE("negative displacements clamp the witness range") {
  const SubstitutionSystem& sys = small100();
  Cylinder u(sys, "0");
  ReturnSet r = return_set(sys, u, {{IntPoly::n(), u}}, -130, 0);
  CHECK(r.members.contains(0));
  CHECK(r.members.contains(-120));
  CHECK(r.undecided.contains(-121));
}

TEST_CASE("weak mixing probe classifies the linear return set") {
  const SubstitutionSystem& sys = big();
  Cylinder u(sys, "0");
  ProbeReport r = weak_mixing_probe(sys, u, u, 0, 10000, 3, 50);
  CHECK(r.undecided == 0);
  REQUIRE(r.classification.verdicts.size() == 4);
  for (const auto& v : r.classification.verdicts) CHECK(v.v.value);
}

TEST_CASE("density experiment validations") {
  const SubstitutionSystem& sys = big();
  auto run = [&](std::vector<IntPoly> polys, size_t w) {
    return density_experiment(sys, polys, w, -100, 100, 3, 1);
  };
  CHECK_THROWS_AS(run({}, 2), NonDegenerate);
  CHECK_THROWS_AS(run({IntPoly()}, 2), NonDegenerate);               // zero polynomial
  CHECK_THROWS_AS(run({IntPoly::constant(1)}, 2), NonDegenerate);    // p(0) != 0
  CHECK_THROWS_AS(run({IntPoly::n(), IntPoly::n()}, 2), NonDegenerate);
  CHECK_THROWS_AS(run({IntPoly::n(), IntPoly::n() + IntPoly::constant(0)}, 2), NonDegenerate);
  CHECK_THROWS_AS(density_experiment(sys, {IntPoly::n()}, 0, -100, 100, 3, 1),
                  std::invalid_argument);
  // tuple space guard: |words(10)|^6 exceeds the cap
  CHECK_THROWS_AS(run({IntPoly::monomial(1, 1), IntPoly::monomial(1, 2), IntPoly::monomial(1, 3),
                       IntPoly::monomial(1, 4), IntPoly::monomial(1, 5), IntPoly::monomial(1, 6)},
                      10),
                  std::invalid_argument);
}

TEST_CASE("single linear displacement covers all short words") {
  const SubstitutionSystem& sys = big();
  CoverageReport r = density_experiment(sys, {IntPoly::n()}, 3, -10000, 10000, 20, 99);
  CHECK(r.k == 1);
  CHECK(r.w == 3);
  CHECK(r.words.size() == 5);
  CHECK(r.full_count == 20);
  CHECK(r.mean_fraction == doctest::Approx(1.0));
  for (const auto& b : r.bases) {
    CHECK(b.fraction == doctest::Approx(1.0));
    CHECK(b.first_full_n >= 1);
    CHECK(b.hits.size() == 5);
  }
}

TEST_CASE("pair of linear displacements covers the product words") {
  const SubstitutionSystem& sys = big();
  CoverageReport r =
      density_experiment(sys, {IntPoly::monomial(1, 1), IntPoly::monomial(1, 2)}, 2, -10000,
                         10000, 10, 7);
  CHECK(r.words == std::vector<std::string>{"00", "01", "10"});
  CHECK(r.full_count == 10);
  nlohmann::json j = coverage_to_json(r);
  CHECK(j["mean_fraction"] == doctest::Approx(1.0));
  CHECK(j["bases"].size() == 10);
  CHECK(j["words"].size() == 3);
}

TEST_CASE("coverage is deterministic in the seed") {
  const SubstitutionSystem& sys = big();
  CoverageReport a = density_experiment(sys, {IntPoly::n()}, 2, -500, 500, 5, 42);
  CoverageReport b = density_experiment(sys, {IntPoly::n()}, 2, -500, 500, 5, 42);
  REQUIRE(a.bases.size() == b.bases.size());
  for (size_t i = 0; i < a.bases.size(); ++i) {
    CHECK(a.bases[i].base == b.bases[i].base);
    CHECK(a.bases[i].fraction == b.bases[i].fraction);
    CHECK(a.bases[i].first_full_n == b.bases[i].first_full_n);
  }
}

TEST_CASE("nested return construction on the linear displacement") {
  const SubstitutionSystem& sys = big();
  Cylinder v(sys, "0");
  NestedReturn r = nested_return_construction(sys, {IntPoly::n()}, {v}, IntPoly::constant(1), 0,
                                              1000);
  REQUIRE(r.ks.size() == 1);
  CHECK(r.ks[0] == 2);
  REQUIRE(r.chain.size() == 1);
  CHECK(r.chain[0][0].pattern == "010");
}

TEST_CASE("nested construction deepens the refinement chain") {
  const SubstitutionSystem& sys = big();
  Cylinder v(sys, "0");
  NestedReturn r = nested_return_construction(sys, {IntPoly::n()}, {v}, IntPoly::constant(1), 3,
                                              1000);
  REQUIRE(r.ks.size() == 4);
  CHECK(r.ks == std::vector<int64_t>{2, 4, 6, 9});
  REQUIRE(r.chain.size() == 4);
  CHECK(r.chain[0][0].pattern == "010");
  CHECK(r.chain[1][0].pattern == "0100");
  CHECK(r.chain[2][0].pattern == "01000");
  CHECK(r.chain[3][0].pattern == "0100010");
  // the gaps respect the radius map
  for (size_t j = 1; j < r.ks.size(); ++j) CHECK(r.ks[j] > r.ks[j - 1] + 1);
  // each refinement is admissible and extends the previous one
  for (size_t j = 0; j < r.chain.size(); ++j) {
    const Refinement& cur = r.chain[j][0];
    CHECK(sys.admissible(cur.pattern));
    if (j > 0) {
      const Refinement& prev = r.chain[j - 1][0];
      REQUIRE(cur.offset <= prev.offset);
      const size_t rel = static_cast<size_t>(prev.offset - cur.offset);
      REQUIRE(rel + prev.pattern.size() <= cur.pattern.size());
      CHECK(cur.pattern.substr(rel, prev.pattern.size()) == prev.pattern);
    }
  }
  nlohmann::json j = nested_to_json(r);
  CHECK(j["ks"].size() == 4);
  CHECK(j["chain"].size() == 4);
}

TEST_CASE("nested construction with two displacement polynomials") {
  const SubstitutionSystem& sys = big();
  Cylinder v0(sys, "00"), v1(sys, "10");
  NestedReturn r = nested_return_construction(
      sys, {IntPoly::n(), IntPoly::monomial(2, 1)}, {v0, v1}, IntPoly::constant(2), 1, 100000);
  CHECK(r.ks.size() == 2);
  CHECK(r.chain.size() == 2);
  CHECK(r.ks[0] > 2);          // |k_0| > r(0) = 2
  CHECK(r.ks[1] > r.ks[0] + 2);
  for (const auto& step : r.chain) {
    REQUIRE(step.size() == 2);
    for (const auto& ref : step) CHECK(sys.admissible(ref.pattern));
  }
}

TEST_CASE("nested construction failures") {
  const SubstitutionSystem& sys = small100();
  Cylinder v(sys, "0");
  CHECK_THROWS_AS(nested_return_construction(sys, {IntPoly::n(), IntPoly::n()}, {v},
                                             IntPoly::constant(1), 0, 100),
                  std::invalid_argument); // polys/cylinders size mismatch
  // a radius wider than the word can never be satisfied
  CHECK_THROWS_AS(nested_return_construction(sys, {IntPoly::n()}, {v},
                                             IntPoly::constant(1000000), 0, 10),
                  WindowExhausted);
}

// Shared helpers for the test binaries: deterministic random instances and a
// harness for driving the installed CLI.
#pragma once

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nilpet/gpoly.hpp"
#include "nilpet/pet.hpp"

namespace testsupport {

using nilpet::GammaPolynomial;
using nilpet::Int;
using nilpet::IntPoly;
using nilpet::Model;
using nilpet::PolySystem;

inline IntPoly random_intpoly(std::mt19937_64& rng, int max_degree, bool zero_at_zero) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Int> c(static_cast<size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coeff(rng);
  if (zero_at_zero && !c.empty()) c[0] = 0;
  return IntPoly::from_binomial(std::move(c));
}

// Nonidentity element with g(0) = e.
inline GammaPolynomial random_pg0_star(std::mt19937_64& rng, const Model& m, int max_degree) {
  for (;;) {
    std::vector<IntPoly> comps;
    comps.reserve(static_cast<size_t>(m->s));
    bool nonzero = false;
    for (int j = 0; j < m->s; ++j) {
      IntPoly p = random_intpoly(rng, max_degree, true);
      nonzero = nonzero || !p.is_zero();
      comps.push_back(std::move(p));
    }
    if (nonzero) return GammaPolynomial(m, std::move(comps));
  }
}

inline PolySystem random_system(std::mt19937_64& rng, const Model& m, int max_degree,
                                size_t max_size) {
  std::uniform_int_distribution<size_t> size(1, max_size);
  const size_t want = size(rng);
  std::vector<GammaPolynomial> elems;
  while (elems.size() < want) {
    GammaPolynomial g = random_pg0_star(rng, m, max_degree);
    bool dup = false;
    for (const auto& h : elems)
      if (h == g) dup = true;
    if (!dup) elems.push_back(std::move(g));
  }
  return PolySystem(std::move(elems));
}

// The fixed corpus shared by the property tests and the acceptance suite:
// 200 systems over abelian ranks 1..3 and the rank-3 matrix model, degree
// <= 4, size <= 6.
inline std::vector<PolySystem> system_corpus() {
  std::mt19937_64 rng(20250817);
  const std::vector<Model> models = {nilpet::abelian_model(1), nilpet::abelian_model(2),
                                     nilpet::abelian_model(3), nilpet::heisenberg_model()};
  std::vector<PolySystem> out;
  out.reserve(200);
  for (int i = 0; i < 200; ++i) out.push_back(random_system(rng, models[i % 4], 4, 6));
  return out;
}

struct CliResult {
  int exit_code = 0;
  std::string output;
};

// Runs the built CLI with stderr folded into stdout.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NILPET_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  CliResult r;
  if (!p) {
    r.exit_code = -1;
    return r;
  }
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

} // namespace testsupport

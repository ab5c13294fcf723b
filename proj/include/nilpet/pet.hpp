// Systems of Gamma-polynomials, weight vectors, the precedence order and the
// PET-induction reduction engine with termination traces.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nilpet/gpoly.hpp"

namespace nilpet {

struct DuplicateElement : std::runtime_error {
  explicit DuplicateElement(const std::string& w) : std::runtime_error(w) {}
};
struct NotMinimal : std::runtime_error {
  explicit NotMinimal(const std::string& w) : std::runtime_error(w) {}
};
struct IdentityElement : std::runtime_error {
  explicit IdentityElement(const std::string& w) : std::runtime_error(w) {}
};
struct PrecedenceViolation : std::runtime_error {
  explicit PrecedenceViolation(const std::string& w) : std::runtime_error(w) {}
};

// Finite set of Gamma-polynomials, pairwise distinct as canonical forms.
class PolySystem {
 public:
  PolySystem() = default;
  explicit PolySystem(std::vector<GammaPolynomial> elements); // throws DuplicateElement
  const std::vector<GammaPolynomial>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  size_t size() const { return elems_.size(); }

 private:
  std::vector<GammaPolynomial> elems_;
};

struct WeightVectorEntry {
  Weight w;
  int multiplicity = 0;
  bool operator==(const WeightVectorEntry&) const = default;
};

// Ascending (weight, count of equivalence classes at that weight); identity
// elements are not counted. Absent weights have multiplicity 0.
struct WeightVector {
  std::vector<WeightVectorEntry> entries;
  bool operator==(const WeightVector&) const = default;
};

WeightVector weight_vector(const PolySystem& A);
std::string format_weight_vector(const WeightVector& wv); // "(2(1,1), 1(1,2))"

// Strict precedence: a < b iff some weight w has a-count < b-count and all
// weights above w carry equal counts.
bool precedes(const WeightVector& a, const WeightVector& b);
bool precedes(const PolySystem& a, const PolySystem& b);

// { g h^-1 : g in A } with duplicates merged (the identity stays in the
// returned set). h must be an element of minimal weight and not the identity.
PolySystem quotient_system(const PolySystem& A, const GammaPolynomial& h);

// Derived system union_t { f_t(k_j)^-1 f_t(n+k_j) f(n)^-1 } over the given
// shifts, with identity-valued forms removed and duplicates merged. f must be
// a minimal-weight element; precedence over A is validated post hoc.
PolySystem proof_step_system(const PolySystem& A, const GammaPolynomial& f,
                             const std::vector<Int>& shifts);

enum class ReduceRule { quotient, proof_step };

struct ReduceOptions {
  ReduceRule rule = ReduceRule::quotient;
  int ell = 2;                    // shifts per proof step: k_0..k_ell
  long shift_bound = 1000000;
  size_t max_steps = 20000;       // growth guards; exceeding either throws
  size_t max_size = 20000;        //   DegreeGuardExceeded
};

struct TraceStep {
  PolySystem system;       // system at the start of the step (identities dropped)
  WeightVector wv;
  std::string rule;        // "quotient", "proof_step" or "stop"
  std::optional<std::string> minimal; // printed form of the chosen element
  std::vector<Int> shifts; // proof_step only
};

struct ReductionTrace {
  std::vector<TraceStep> steps; // weight vectors strictly decrease step to step
  PolySystem terminal;
};

// Repeatedly removes identities, selects the minimal-weight element
// (tie-break: smallest canonical coefficient vector) and applies the rule;
// stops when the system is empty or its weight vector is (1(1,1)).
ReductionTrace pet_reduce(const PolySystem& A, const ReduceOptions& opts);

nlohmann::json trace_to_json(const ReductionTrace& t);

} // namespace nilpet

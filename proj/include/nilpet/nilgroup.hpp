// Exact arithmetic in finitely generated torsion-free nilpotent groups via
// Malcev coordinates, with an optional faithful unitriangular integer-matrix
// representation used as a verification oracle.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilpet/expr.hpp"
#include "nilpet/intpoly.hpp"

namespace nilpet {

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct NoRepresentation : std::runtime_error {
  explicit NoRepresentation(const std::string& w) : std::runtime_error(w) {}
};
struct ModelValidationError : std::runtime_error {
  explicit ModelValidationError(const std::string& w) : std::runtime_error(w) {}
};

// Coordinates (r_1,...,r_s) of a group element in the fixed Malcev basis;
// the zero vector is the identity.
using MalcevExponents = std::vector<Int>;

// Dense square matrix of arbitrary-precision integers, sized for the small
// faithful representations shipped here (dim <= 8).
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim); // zero matrix
  static Mat identity(int dim);

  int dim() const { return d_; }
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * d_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * d_ + j]; }

  Mat operator*(const Mat& o) const;
  // M^n for any integer n; negative powers require M unitriangular (the
  // inverse is computed from the nilpotent part).
  Mat pow(const Int& n) const;
  Mat inverse_unitriangular() const;
  bool is_unitriangular() const;
  bool operator==(const Mat& o) const { return d_ == o.d_ && a_ == o.a_; }

 private:
  int d_ = 0;
  std::vector<Int> a_;
};

struct MatrixRep {
  int dim = 0;
  std::vector<Mat> basis; // image of S_1..S_s
};

// A group presented by its coordinate laws: s polynomial expressions for
// multiplication (variables a1..as,b1..bs) and s for integer powers
// (variables a1..as,n). degree_guard caps symbolic composition downstream.
struct GroupModel {
  std::string name;
  int s = 0;
  std::vector<Expr> mul;
  std::vector<Expr> pow;
  std::optional<MatrixRep> rep;
  int degree_guard = 64;
};

using Model = std::shared_ptr<const GroupModel>;

// True when both handles refer to the same presentation (same object or same
// name and rank); Gamma-polynomial operations require matching models.
bool same_model(const Model& a, const Model& b);

Model abelian_model(int s);
Model heisenberg_model(); // s=3, basis (z,y,x), [x,y]=z
Model ut4_model();        // s=6, basis ordered by descending superdiagonal distance

// Loads { name, s, mul:[...], pow:[...], matrix?:{dim, basis} } and validates.
Model load_model_json(const std::string& path);
Model model_from_json_text(const std::string& text);

// Construction-time checks: integrality of both maps on a sample of the
// integer grid [-5,5], identity laws, the Malcev commutator condition, and
// oracle agreement when a matrix representation is present.
// Throws ModelValidationError.
void validate_model(const GroupModel& m);

MalcevExponents identity(const Model& m);
MalcevExponents multiply(const Model& m, const MalcevExponents& a, const MalcevExponents& b);
MalcevExponents inverse(const Model& m, const MalcevExponents& a);
MalcevExponents power(const Model& m, const MalcevExponents& a, const Int& n);
// a^-1 b^-1 a b
MalcevExponents commutator(const Model& m, const MalcevExponents& a, const MalcevExponents& b);
Mat to_matrix(const Model& m, const MalcevExponents& a);

} // namespace nilpet

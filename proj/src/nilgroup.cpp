#include "nilpet/nilgroup.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nilpet {

// --- Mat ---------------------------------------------------------------------

Mat::Mat(int dim) : d_(dim), a_(static_cast<size_t>(dim) * dim, Int(0)) {}

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (d_ != o.d_) throw DimensionMismatch("matrix dimension mismatch");
  Mat r(d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < d_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

bool Mat::is_unitriangular() const {
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j <= i; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Mat Mat::inverse_unitriangular() const {
  if (!is_unitriangular()) throw std::invalid_argument("matrix is not unitriangular");
  // (I+N)^-1 = sum_{k<d} (-N)^k for strictly upper N.
  Mat n(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j) n.at(i, j) = -at(i, j);
  Mat r = Mat::identity(d_);
  Mat p = Mat::identity(d_);
  for (int k = 1; k < d_; ++k) {
    p = p * n;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) r.at(i, j) += p.at(i, j);
  }
  return r;
}

Mat Mat::pow(const Int& n) const {
  Mat base = *this;
  Int e = n;
  if (e < 0) {
    base = base.inverse_unitriangular();
    e = -e;
  }
  Mat r = Mat::identity(d_);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * base;
  }
  return r;
}

// --- coordinate operations ---------------------------------------------------

namespace {

std::vector<std::string> mul_vars(int s) {
  std::vector<std::string> v;
  for (int i = 1; i <= s; ++i) v.push_back("a" + std::to_string(i));
  for (int i = 1; i <= s; ++i) v.push_back("b" + std::to_string(i));
  return v;
}

std::vector<std::string> pow_vars(int s) {
  std::vector<std::string> v;
  for (int i = 1; i <= s; ++i) v.push_back("a" + std::to_string(i));
  v.push_back("n");
  return v;
}

Int rat_to_int(const Rat& r, const char* what) {
  if (r.get_den() != 1)
    throw ModelValidationError(std::string(what) + " produced non-integer value " + r.get_str());
  return r.get_num();
}

MalcevExponents mul_coords(const GroupModel& m, const MalcevExponents& a,
                           const MalcevExponents& b) {
  if (static_cast<int>(a.size()) != m.s || static_cast<int>(b.size()) != m.s)
    throw DimensionMismatch("coordinate vector length differs from model rank");
  std::vector<Rat> vals;
  vals.reserve(2 * static_cast<size_t>(m.s));
  for (const Int& x : a) vals.emplace_back(x);
  for (const Int& x : b) vals.emplace_back(x);
  MalcevExponents out(static_cast<size_t>(m.s));
  for (int i = 0; i < m.s; ++i) out[static_cast<size_t>(i)] = rat_to_int(m.mul[static_cast<size_t>(i)].eval_rat(vals), "mul_map");
  return out;
}

MalcevExponents pow_coords(const GroupModel& m, const MalcevExponents& a, const Int& n) {
  if (static_cast<int>(a.size()) != m.s)
    throw DimensionMismatch("coordinate vector length differs from model rank");
  std::vector<Rat> vals;
  vals.reserve(static_cast<size_t>(m.s) + 1);
  for (const Int& x : a) vals.emplace_back(x);
  vals.emplace_back(n);
  MalcevExponents out(static_cast<size_t>(m.s));
  for (int i = 0; i < m.s; ++i) out[static_cast<size_t>(i)] = rat_to_int(m.pow[static_cast<size_t>(i)].eval_rat(vals), "pow_map");
  return out;
}

} // namespace

bool same_model(const Model& a, const Model& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name == b->name && a->s == b->s;
}

MalcevExponents identity(const Model& m) { return MalcevExponents(static_cast<size_t>(m->s), Int(0)); }

MalcevExponents multiply(const Model& m, const MalcevExponents& a, const MalcevExponents& b) {
  return mul_coords(*m, a, b);
}

MalcevExponents power(const Model& m, const MalcevExponents& a, const Int& n) {
  return pow_coords(*m, a, n);
}

MalcevExponents inverse(const Model& m, const MalcevExponents& a) { return power(m, a, Int(-1)); }

MalcevExponents commutator(const Model& m, const MalcevExponents& a, const MalcevExponents& b) {
  MalcevExponents r = multiply(m, inverse(m, a), inverse(m, b));
  r = multiply(m, r, a);
  return multiply(m, r, b);
}

Mat to_matrix(const Model& m, const MalcevExponents& a) {
  if (!m->rep) throw NoRepresentation("model '" + m->name + "' has no matrix representation");
  if (static_cast<int>(a.size()) != m->s)
    throw DimensionMismatch("coordinate vector length differs from model rank");
  Mat r = Mat::identity(m->rep->dim);
  for (int i = 0; i < m->s; ++i) r = r * m->rep->basis[static_cast<size_t>(i)].pow(a[static_cast<size_t>(i)]);
  return r;
}

// --- built-in models ----------------------------------------------------------

namespace {

Model finish(GroupModel m) { return std::make_shared<const GroupModel>(std::move(m)); }

Mat elementary(int dim, int i, int j) {
  Mat m = Mat::identity(dim);
  m.at(i, j) = 1;
  return m;
}

} // namespace

Model abelian_model(int s) {
  if (s < 1) throw ModelValidationError("abelian model needs s >= 1");
  GroupModel m;
  m.name = "abelian" + std::to_string(s);
  m.s = s;
  const auto mv = mul_vars(s);
  const auto pv = pow_vars(s);
  for (int i = 1; i <= s; ++i) {
    m.mul.push_back(Expr::parse("a" + std::to_string(i) + "+b" + std::to_string(i), mv));
    m.pow.push_back(Expr::parse("n*a" + std::to_string(i), pv));
  }
  return finish(std::move(m));
}

Model heisenberg_model() {
  GroupModel m;
  m.name = "heisenberg";
  m.s = 3;
  const auto mv = mul_vars(3);
  const auto pv = pow_vars(3);
  // Basis (S1,S2,S3) = (z,y,x) with [x,y] = z; element S1^r1 S2^r2 S3^r3 is
  // the 3x3 unitriangular matrix with entries (1,2)=r3, (2,3)=r2, (1,3)=r1.
  m.mul.push_back(Expr::parse("a1+b1+a3*b2", mv));
  m.mul.push_back(Expr::parse("a2+b2", mv));
  m.mul.push_back(Expr::parse("a3+b3", mv));
  m.pow.push_back(Expr::parse("n*a1+(a2*a3*(n^2-n))/2", pv));
  m.pow.push_back(Expr::parse("n*a2", pv));
  m.pow.push_back(Expr::parse("n*a3", pv));
  MatrixRep rep;
  rep.dim = 3;
  rep.basis = {elementary(3, 0, 2), elementary(3, 1, 2), elementary(3, 0, 1)};
  m.rep = std::move(rep);
  return finish(std::move(m));
}

Model ut4_model() {
  GroupModel m;
  m.name = "ut4";
  m.s = 6;
  const auto mv = mul_vars(6);
  const auto pv = pow_vars(6);
  // Basis by descending superdiagonal distance:
  // S1=E14, S2=E13, S3=E24, S4=E12, S5=E23, S6=E34. The canonical product
  // S1^r1...S6^r6 has matrix entries (1,2)=r4, (2,3)=r5, (3,4)=r6,
  // (1,3)=r2+r4r5, (2,4)=r3+r5r6, (1,4)=r1+r2r6+r4r5r6.
  m.mul.push_back(Expr::parse("a1+b1+a4*b3-a6*b2-a4*a6*b5-a6*b4*b5", mv));
  m.mul.push_back(Expr::parse("a2+b2-a5*b4", mv));
  m.mul.push_back(Expr::parse("a3+b3-a6*b5", mv));
  m.mul.push_back(Expr::parse("a4+b4", mv));
  m.mul.push_back(Expr::parse("a5+b5", mv));
  m.mul.push_back(Expr::parse("a6+b6", mv));
  m.pow.push_back(
      Expr::parse("n*a1+((a3*a4-a2*a6)*(n^2-n))/2-(a4*a5*a6*(n^3-n))/3", pv));
  m.pow.push_back(Expr::parse("n*a2-(a4*a5*(n^2-n))/2", pv));
  m.pow.push_back(Expr::parse("n*a3-(a5*a6*(n^2-n))/2", pv));
  m.pow.push_back(Expr::parse("n*a4", pv));
  m.pow.push_back(Expr::parse("n*a5", pv));
  m.pow.push_back(Expr::parse("n*a6", pv));
  MatrixRep rep;
  rep.dim = 4;
  rep.basis = {elementary(4, 0, 3), elementary(4, 0, 2), elementary(4, 1, 3),
               elementary(4, 0, 1), elementary(4, 1, 2), elementary(4, 2, 3)};
  m.rep = std::move(rep);
  return finish(std::move(m));
}

// --- validation ---------------------------------------------------------------

namespace {

// Deterministic sample of the grid [-5,5]^dims: the full grid when it is
// small, otherwise a fixed-seed draw of `cap` points.
std::vector<std::vector<Int>> grid_sample(int dims, size_t cap) {
  double total = 1;
  for (int i = 0; i < dims; ++i) total *= 11.0;
  std::vector<std::vector<Int>> pts;
  if (total <= static_cast<double>(cap)) {
    std::vector<long> idx(static_cast<size_t>(dims), -5);
    for (;;) {
      std::vector<Int> p;
      p.reserve(static_cast<size_t>(dims));
      for (long v : idx) p.emplace_back(v);
      pts.push_back(std::move(p));
      int d = 0;
      while (d < dims && ++idx[static_cast<size_t>(d)] > 5) {
        idx[static_cast<size_t>(d)] = -5;
        ++d;
      }
      if (d == dims) break;
    }
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> dist(-5, 5);
    pts.reserve(cap);
    for (size_t i = 0; i < cap; ++i) {
      std::vector<Int> p;
      p.reserve(static_cast<size_t>(dims));
      for (int d = 0; d < dims; ++d) p.emplace_back(dist(rng));
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

MalcevExponents basis_element(int s, int i) {
  MalcevExponents e(static_cast<size_t>(s), Int(0));
  e[static_cast<size_t>(i) - 1] = 1;
  return e;
}

} // namespace

void validate_model(const GroupModel& m) {
  if (m.s < 1) throw ModelValidationError("rank must be >= 1");
  if (static_cast<int>(m.mul.size()) != m.s)
    throw ModelValidationError("mul_map must have s expressions");
  if (static_cast<int>(m.pow.size()) != m.s)
    throw ModelValidationError("pow_map must have s expressions");

  constexpr size_t kCap = 20000;
  const Model handle = std::make_shared<const GroupModel>(m);

  // Integrality + identity laws for mul on a grid sample.
  for (const auto& pt : grid_sample(2 * m.s, kCap)) {
    MalcevExponents a(pt.begin(), pt.begin() + m.s), b(pt.begin() + m.s, pt.end());
    (void)mul_coords(m, a, b); // rat_to_int rejects non-integers
  }
  const MalcevExponents zero(static_cast<size_t>(m.s), Int(0));
  for (const auto& pt : grid_sample(m.s, 2000)) {
    MalcevExponents x(pt.begin(), pt.end());
    if (mul_coords(m, x, zero) != x || mul_coords(m, zero, x) != x)
      throw ModelValidationError("identity laws fail at a sampled point");
  }
  // Integrality for pow on a grid sample (last coordinate doubles as n).
  for (const auto& pt : grid_sample(m.s + 1, kCap)) {
    MalcevExponents a(pt.begin(), pt.begin() + m.s);
    (void)pow_coords(m, a, pt.back());
  }
  // Power consistency against repeated multiplication.
  for (const auto& pt : grid_sample(m.s, 200)) {
    MalcevExponents a(pt.begin(), pt.end());
    MalcevExponents acc = zero;
    for (int k = 0; k <= 4; ++k) {
      if (pow_coords(m, a, Int(k)) != acc)
        throw ModelValidationError("pow_map disagrees with repeated multiplication");
      acc = mul_coords(m, acc, a);
    }
    if (mul_coords(m, a, pow_coords(m, a, Int(-1))) != zero)
      throw ModelValidationError("pow_map at -1 is not the inverse");
  }
  // Malcev condition: [S_i, S_j] for i<j has zero coordinates at positions >= i.
  for (int i = 1; i <= m.s; ++i)
    for (int j = i + 1; j <= m.s; ++j) {
      const MalcevExponents c = commutator(handle, basis_element(m.s, i), basis_element(m.s, j));
      for (int p = i; p <= m.s; ++p)
        if (c[static_cast<size_t>(p) - 1] != 0)
          throw ModelValidationError("Malcev condition fails for basis pair (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
    }
  // Matrix oracle agreement and sampled injectivity.
  if (m.rep) {
    if (static_cast<int>(m.rep->basis.size()) != m.s)
      throw ModelValidationError("matrix representation must embed all basis elements");
    for (const Mat& b : m.rep->basis) {
      if (b.dim() != m.rep->dim) throw ModelValidationError("basis image dimension mismatch");
      if (!b.is_unitriangular())
        throw ModelValidationError("basis images must be unitriangular");
    }
    const auto pts = grid_sample(2 * m.s, 400);
    for (const auto& pt : pts) {
      MalcevExponents a(pt.begin(), pt.begin() + m.s), b(pt.begin() + m.s, pt.end());
      if (!(to_matrix(handle, mul_coords(m, a, b)) == to_matrix(handle, a) * to_matrix(handle, b)))
        throw ModelValidationError("matrix oracle disagrees with mul_map");
      if (a != b && to_matrix(handle, a) == to_matrix(handle, b))
        throw ModelValidationError("matrix representation is not injective on the sample");
    }
  }
}

// --- JSON model files -----------------------------------------------------------

namespace {

Int json_int(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw ModelValidationError("expected integer (number or decimal string) in model JSON");
}

} // namespace

Model model_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GroupModel m;
  m.name = j.at("name").get<std::string>();
  m.s = j.at("s").get<int>();
  if (m.s < 1) throw ModelValidationError("model rank must be >= 1");
  const auto mv = mul_vars(m.s);
  const auto pv = pow_vars(m.s);
  for (const auto& e : j.at("mul")) m.mul.push_back(Expr::parse(e.get<std::string>(), mv));
  for (const auto& e : j.at("pow")) m.pow.push_back(Expr::parse(e.get<std::string>(), pv));
  if (j.contains("matrix") && !j.at("matrix").is_null()) {
    MatrixRep rep;
    rep.dim = j.at("matrix").at("dim").get<int>();
    for (const auto& bm : j.at("matrix").at("basis")) {
      Mat mat(rep.dim);
      int r = 0;
      for (const auto& row : bm) {
        int c = 0;
        for (const auto& v : row) mat.at(r, c++) = json_int(v);
        ++r;
      }
      rep.basis.push_back(std::move(mat));
    }
    m.rep = std::move(rep);
  }
  validate_model(m);
  return finish(std::move(m));
}

Model load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelValidationError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json_text(ss.str());
}

} // namespace nilpet

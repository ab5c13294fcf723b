#include "nilpet/zsets.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace nilpet {

WindowSet::WindowSet(int64_t lo, int64_t hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw EmptyWindow("window [" + std::to_string(lo) + "," + std::to_string(hi) +
                                 "] is empty");
  bits_.assign(static_cast<size_t>((span() + 63) / 64), 0);
}

WindowSet WindowSet::from_members(int64_t lo, int64_t hi, const std::vector<int64_t>& members) {
  WindowSet s(lo, hi);
  for (int64_t n : members) s.insert(n);
  return s;
}

bool WindowSet::contains(int64_t n) const {
  if (n < lo_ || n > hi_) return false;
  const uint64_t i = static_cast<uint64_t>(n - lo_);
  return (bits_[i >> 6] >> (i & 63)) & 1;
}

void WindowSet::insert(int64_t n) {
  if (n < lo_ || n > hi_)
    throw WindowMismatch("element " + std::to_string(n) + " lies outside the window");
  const uint64_t i = static_cast<uint64_t>(n - lo_);
  bits_[i >> 6] |= uint64_t(1) << (i & 63);
}

size_t WindowSet::count() const {
  size_t c = 0;
  for (uint64_t w : bits_) c += static_cast<size_t>(__builtin_popcountll(w));
  return c;
}

std::vector<int64_t> WindowSet::members() const {
  std::vector<int64_t> out;
  out.reserve(count());
  for (int64_t n = lo_; n <= hi_; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

namespace {

// Longest run of positions in [a,b] whose membership equals `value`.
int64_t longest_run_of(const WindowSet& S, int64_t a, int64_t b, bool value) {
  int64_t best = 0, cur = 0;
  for (int64_t n = a; n <= b; ++n) {
    if (S.contains(n) == value) {
      if (++cur > best) best = cur;
    } else {
      cur = 0;
    }
  }
  return best;
}

void require_positive(int64_t v, const char* name) {
  if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

} // namespace

Verdict is_syndetic_at(const WindowSet& S, int64_t G) {
  require_positive(G, "G");
  const int64_t a = S.lo() + G, b = S.hi() - G;
  if (a > b)
    throw EmptyWindow("window too small to scan gaps of size " + std::to_string(G));
  const int64_t gap = longest_run_of(S, a, b, false);
  return {gap < G, gap};
}

Verdict is_thick_at(const WindowSet& S, int64_t L) {
  require_positive(L, "L");
  const int64_t run = longest_run_of(S, S.lo(), S.hi(), true);
  return {run >= L, run};
}

WindowSet run_starts(const WindowSet& S, int64_t L) {
  require_positive(L, "L");
  const int64_t b = S.hi() - L + 1;
  if (b < S.lo()) throw EmptyWindow("window shorter than run length " + std::to_string(L));
  WindowSet starts(S.lo(), b);
  int64_t run = 0;
  for (int64_t n = S.lo(); n <= S.hi(); ++n) {
    run = S.contains(n) ? run + 1 : 0;
    if (run >= L) starts.insert(n - L + 1);
  }
  return starts;
}

Verdict is_thickly_syndetic_at(const WindowSet& S, int64_t L, int64_t G) {
  return is_syndetic_at(run_starts(S, L), G);
}

Verdict is_piecewise_syndetic_at(const WindowSet& S, int64_t G, int64_t L) {
  require_positive(G, "G");
  require_positive(L, "L");
  int64_t best = 0;
  int64_t chain_start = 0, prev = 0;
  bool open = false;
  for (int64_t n = S.lo(); n <= S.hi(); ++n) {
    if (!S.contains(n)) continue;
    if (!open || n - prev > G) {
      chain_start = n;
      open = true;
    }
    prev = n;
    best = std::max(best, n - chain_start + 1);
  }
  return {best >= L, best};
}

WindowSet intersect(const WindowSet& a, const WindowSet& b) {
  if (a.lo() != b.lo() || a.hi() != b.hi())
    throw WindowMismatch("intersect requires identical windows");
  WindowSet r(a.lo(), a.hi());
  for (int64_t n = a.lo(); n <= a.hi(); ++n)
    if (a.contains(n) && b.contains(n)) r.insert(n);
  return r;
}

ClassificationReport classify(const WindowSet& S, int64_t G, int64_t L) {
  ClassificationReport r;
  r.lo = S.lo();
  r.hi = S.hi();
  r.member_count = S.count();
  r.max_gap = longest_run_of(S, S.lo(), S.hi(), false);
  r.longest_run = longest_run_of(S, S.lo(), S.hi(), true);
  const WindowSet starts = run_starts(S, L);
  r.run_start_gaps[L] = longest_run_of(starts, starts.lo(), starts.hi(), false);
  r.verdicts.push_back({"syndetic", G, 0, is_syndetic_at(S, G)});
  r.verdicts.push_back({"thick", 0, L, is_thick_at(S, L)});
  r.verdicts.push_back({"thickly_syndetic", G, L, is_thickly_syndetic_at(S, L, G)});
  r.verdicts.push_back({"piecewise_syndetic", G, L, is_piecewise_syndetic_at(S, G, L)});
  return r;
}

nlohmann::json report_to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["member_count"] = r.member_count;
  j["max_gap"] = r.max_gap;
  j["longest_run"] = r.longest_run;
  nlohmann::json gaps;
  for (const auto& [L, g] : r.run_start_gaps) gaps[std::to_string(L)] = g;
  j["run_start_gaps"] = gaps;
  nlohmann::json vs = nlohmann::json::array();
  for (const NamedVerdict& v : r.verdicts) {
    nlohmann::json jv;
    jv["family"] = v.family;
    if (v.G > 0) jv["G"] = v.G;
    if (v.L > 0) jv["L"] = v.L;
    jv["value"] = v.v.value;
    jv["witness"] = v.v.witness;
    vs.push_back(std::move(jv));
  }
  j["verdicts"] = vs;
  return j;
}

void write_csv(const WindowSet& S, std::ostream& out) {
  out << "n,member\n";
  for (int64_t n = S.lo(); n <= S.hi(); ++n)
    out << n << ',' << (S.contains(n) ? 1 : 0) << '\n';
}

namespace {

int64_t parse_i64(const std::string& s, size_t from, size_t to) {
  int64_t v = 0;
  const auto res = std::from_chars(s.data() + from, s.data() + to, v);
  if (res.ec != std::errc() || res.ptr != s.data() + to)
    throw CsvError("malformed integer in CSV: '" + s.substr(from, to - from) + "'");
  return v;
}

} // namespace

WindowSet read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,member") throw CsvError("expected header 'n,member'");
  std::vector<std::pair<int64_t, bool>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) throw CsvError("missing comma in CSV row: '" + line + "'");
    const int64_t n = parse_i64(line, 0, comma);
    const int64_t m = parse_i64(line, comma + 1, line.size());
    if (m != 0 && m != 1) throw CsvError("member flag must be 0 or 1");
    rows.emplace_back(n, m == 1);
  }
  if (rows.empty()) throw CsvError("CSV has no data rows");
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].first != rows[i - 1].first + 1)
      throw CsvError("CSV rows must cover the window densely");
  WindowSet s(rows.front().first, rows.back().first);
  for (const auto& [n, m] : rows)
    if (m) s.insert(n);
  return s;
}

} // namespace nilpet

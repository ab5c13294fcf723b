// Windowed classification of subsets of Z: syndetic, thick, thickly syndetic
// and piecewise syndetic verdicts with recomputable witnesses. All verdicts
// are finite-window approximations; universal quantifiers exclude margins so
// truncation cannot manufacture gaps.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace nilpet {

struct WindowMismatch : std::runtime_error {
  explicit WindowMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct EmptyWindow : std::runtime_error {
  explicit EmptyWindow(const std::string& w) : std::runtime_error(w) {}
};
struct CsvError : std::runtime_error {
  explicit CsvError(const std::string& w) : std::runtime_error(w) {}
};

// Membership bitmask over the integer window [lo, hi].
class WindowSet {
 public:
  WindowSet(int64_t lo, int64_t hi); // lo <= hi required
  static WindowSet from_members(int64_t lo, int64_t hi, const std::vector<int64_t>& members);

  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  int64_t span() const { return hi_ - lo_ + 1; }
  bool contains(int64_t n) const;
  void insert(int64_t n);
  size_t count() const;
  std::vector<int64_t> members() const;

 private:
  int64_t lo_, hi_;
  std::vector<uint64_t> bits_;
};

struct Verdict {
  bool value = false;
  // Recomputable witness: for syndetic-type checks the longest non-member run
  // in the scanned range; for thick the longest member run; for piecewise the
  // longest low-gap span.
  int64_t witness = 0;
};

// Every length-G subinterval of [lo+G, hi-G] meets S.
Verdict is_syndetic_at(const WindowSet& S, int64_t G);
// S contains L consecutive integers somewhere in the window.
Verdict is_thick_at(const WindowSet& S, int64_t L);
// Starts of length-L runs form a G-syndetic set.
Verdict is_thickly_syndetic_at(const WindowSet& S, int64_t L, int64_t G);
// Some interval of length >= L on which consecutive members are <= G apart.
Verdict is_piecewise_syndetic_at(const WindowSet& S, int64_t G, int64_t L);

WindowSet intersect(const WindowSet& a, const WindowSet& b);
// Start positions of length-L member runs, on the window [lo, hi-L+1].
WindowSet run_starts(const WindowSet& S, int64_t L);

struct NamedVerdict {
  std::string family; // "syndetic", "thick", "thickly_syndetic", "piecewise_syndetic"
  int64_t G = 0;
  int64_t L = 0;
  Verdict v;
};

struct ClassificationReport {
  int64_t lo = 0, hi = 0;
  size_t member_count = 0;
  int64_t max_gap = 0;      // longest non-member run in the full window
  int64_t longest_run = 0;  // longest member run
  std::map<int64_t, int64_t> run_start_gaps; // L -> longest gap of the start set
  std::vector<NamedVerdict> verdicts;
};

ClassificationReport classify(const WindowSet& S, int64_t G, int64_t L);
nlohmann::json report_to_json(const ClassificationReport& r);

// CSV columns: n,member with member in {0,1}; rows cover the window densely.
void write_csv(const WindowSet& S, std::ostream& out);
WindowSet read_csv(std::istream& in);

} // namespace nilpet

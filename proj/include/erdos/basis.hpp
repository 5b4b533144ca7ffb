#pragma once

// The staged additive basis
//
//   A = [2,3] u U_{k>=1} ({c_k} u B_k u F_k),
//   c_k = 4*5^(k-1),  B_k = [5*5^(k-1), 6*5^(k-1) - 1],
//   F_k = [10*5^(k-1) - 1, 15*5^(k-1)],
//
// together with finite checks of its covering and rigidity properties and
// of the gap that every 2-colouring leaves in one monochromatic sumset.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace erdos::basis {

enum class Kind { core, c, B, F, none };

std::string to_string(Kind kind);

struct StageClassification {
  std::uint64_t x = 0;
  Kind kind = Kind::none;
  unsigned stage = 0;  // 0 for core / none
};

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct Interval {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  std::uint64_t length() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::uint64_t x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

std::uint64_t pow5(unsigned e);

std::uint64_t c_element(unsigned k);
Interval B_interval(unsigned k);
Interval F_interval(unsigned k);
/// J_k = [9*5^(k-1), 10*5^(k-1) - 1].
Interval J_interval(unsigned k);

/// Classifies x in O(1): the stage comes from a power-of-five table lookup.
StageClassification classify(std::uint64_t x);

inline bool in_A(std::uint64_t x) { return classify(x).kind != Kind::none; }

/// A restricted to stages <= max_stage (max_stage == 0 means only [2,3]).
bool in_A_k(std::uint64_t x, unsigned max_stage);

/// A n [0, limit] ascending, built stage by stage from the interval lists.
std::vector<std::uint64_t> enumerate_A(std::uint64_t limit);

/// Pieces of A_k as intervals, in increasing order.
std::vector<Interval> stage_pieces(unsigned max_stage);

/// Occupancy array over [0, n) for a subset of the naturals.
using Occupancy = std::vector<bool>;

/// S + S restricted to [0, limit], computed from the runs of S's occupancy
/// array with a difference array.
Occupancy sumset(const Occupancy& set, std::uint64_t limit);

/// Same result through word-level shift-or over every element; quadratic,
/// used to cross-check sumset() on small inputs.
Occupancy sumset_shift_or(const Occupancy& set, std::uint64_t limit);

struct CoverReport {
  unsigned k = 0;
  Interval target;                        // [4, 6*5^k]
  std::optional<std::uint64_t> first_gap; // first uncovered n, if any
  bool pass = false;
};

/// Checks [4, 6*5^k] is inside A_k + A_k. Throws VerificationError on a gap.
CoverReport sumset_cover_check(unsigned k);

/// One of the eight interval sums that tile [4Q, 30Q] at stage k.
struct IntervalSum {
  std::string label;
  Interval computed;  // from the endpoints of the actual summand sets
  Interval expected;  // closed form in Q = 5^(k-1)
};

std::vector<IntervalSum> stage_interval_sums(unsigned k);

struct Representation {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const Representation&, const Representation&) = default;
};

/// Every n = a + b with a <= b and a, b in A.
std::vector<Representation> representations(std::uint64_t n);

struct RigidityReport {
  unsigned k = 0;
  Interval J;
  std::uint64_t checked = 0;
  bool pass = false;
};

/// For every n in J_k the representations are exactly {(c_k, n - c_k)} with
/// n - c_k in B_k. Throws VerificationError otherwise.
RigidityReport rigidity_check(unsigned k);

/// A 2-colouring of A, given by the colours of the c_k and a rule for the
/// remaining elements. Colours are 1 and 2.
struct PartitionRule {
  std::string name;
  std::function<int(unsigned k)> c_color;
  std::function<int(std::uint64_t x)> other_color;

  int color(std::uint64_t x) const;
};

PartitionRule rule_all_c_to_one();
PartitionRule rule_alternating();
/// Colours every element by a seeded hash; reproducible from the seed.
PartitionRule rule_random(std::uint64_t seed);
/// Parses "all-c-to-1", "alternating" or "random:<seed>".
std::optional<PartitionRule> parse_rule(const std::string& text);

struct GapReport {
  unsigned k = 0;
  Interval J;
  int c_color = 0;                  // colour holding c_k
  int gapped_color = 0;             // the other colour
  std::uint64_t truncation = 0;     // elements above this never reach J_k
  std::uint64_t gapped_hits = 0;    // |J_k n (A_gapped + A_gapped)|, must be 0
  std::uint64_t c_color_hits = 0;   // |J_k n (A_c + A_c)|
  bool pass = false;
};

GapReport gap_witness(const PartitionRule& rule, unsigned k);

}  // namespace erdos::basis

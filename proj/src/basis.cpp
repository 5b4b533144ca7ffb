#include "erdos/basis.hpp"

#include <algorithm>
#include <array>

#include "erdos/errors.hpp"

namespace erdos::basis {

namespace {

constexpr unsigned kMaxStage = 26;  // 15 * 5^25 still fits in 64 bits

constexpr std::array<std::uint64_t, kMaxStage + 1> make_pow5() {
  std::array<std::uint64_t, kMaxStage + 1> t{};
  t[0] = 1;
  for (unsigned i = 1; i <= kMaxStage; ++i) t[i] = t[i - 1] * 5;
  return t;
}

constexpr auto kPow5 = make_pow5();

// kStageStart[i] = c_{i+1} = 4 * 5^i
constexpr std::array<std::uint64_t, kMaxStage> make_stage_start() {
  std::array<std::uint64_t, kMaxStage> t{};
  for (unsigned i = 0; i < kMaxStage; ++i) t[i] = 4 * kPow5[i];
  return t;
}

constexpr auto kStageStart = make_stage_start();

void require_stage(unsigned k) {
  if (k < 1 || k > kMaxStage) throw ContractError("stage index out of range");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Occupancy occupancy_of_A_k(unsigned max_stage, std::uint64_t limit) {
  Occupancy occ(limit + 1, false);
  for (const Interval& piece : stage_pieces(max_stage)) {
    for (std::uint64_t x = piece.lo; x <= std::min(piece.hi, limit); ++x) occ[x] = true;
  }
  return occ;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::core: return "core";
    case Kind::c: return "c";
    case Kind::B: return "B";
    case Kind::F: return "F";
    case Kind::none: return "none";
  }
  return "none";
}

std::uint64_t pow5(unsigned e) {
  if (e > kMaxStage) throw ContractError("5^e out of 64-bit range");
  return kPow5[e];
}

std::uint64_t c_element(unsigned k) {
  require_stage(k);
  return 4 * kPow5[k - 1];
}

Interval B_interval(unsigned k) {
  require_stage(k);
  const std::uint64_t Q = kPow5[k - 1];
  return {5 * Q, 6 * Q - 1};
}

Interval F_interval(unsigned k) {
  require_stage(k);
  const std::uint64_t Q = kPow5[k - 1];
  return {10 * Q - 1, 15 * Q};
}

Interval J_interval(unsigned k) {
  require_stage(k);
  const std::uint64_t Q = kPow5[k - 1];
  return {9 * Q, 10 * Q - 1};
}

StageClassification classify(std::uint64_t x) {
  if (x == 2 || x == 3) return {x, Kind::core, 0};
  if (x < 4) return {x, Kind::none, 0};
  // Stage k spans [4Q, 15Q] with Q = 5^(k-1); consecutive spans never touch.
  const auto it = std::upper_bound(kStageStart.begin(), kStageStart.end(), x);
  const auto k = static_cast<unsigned>(it - kStageStart.begin());
  const std::uint64_t Q = kPow5[k - 1];
  if (x == 4 * Q) return {x, Kind::c, k};
  if (x >= 5 * Q && x <= 6 * Q - 1) return {x, Kind::B, k};
  if (x >= 10 * Q - 1 && x <= 15 * Q) return {x, Kind::F, k};
  return {x, Kind::none, 0};
}

bool in_A_k(std::uint64_t x, unsigned max_stage) {
  const StageClassification c = classify(x);
  if (c.kind == Kind::none) return false;
  return c.kind == Kind::core || c.stage <= max_stage;
}

std::vector<Interval> stage_pieces(unsigned max_stage) {
  std::vector<Interval> out{{2, 3}};
  for (unsigned k = 1; k <= std::min(max_stage, kMaxStage); ++k) {
    const std::uint64_t c = c_element(k);
    out.push_back({c, c});
    out.push_back(B_interval(k));
    out.push_back(F_interval(k));
  }
  return out;
}

std::vector<std::uint64_t> enumerate_A(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (const Interval& piece : stage_pieces(kMaxStage)) {
    if (piece.lo > limit) break;
    for (std::uint64_t x = piece.lo; x <= std::min(piece.hi, limit); ++x) out.push_back(x);
  }
  return out;
}

Occupancy sumset(const Occupancy& set, std::uint64_t limit) {
  std::vector<Interval> runs;
  for (std::uint64_t i = 0; i < set.size(); ++i) {
    if (!set[i]) continue;
    if (!runs.empty() && runs.back().hi + 1 == i)
      runs.back().hi = i;
    else
      runs.push_back({i, i});
  }
  std::vector<std::int64_t> diff(limit + 2, 0);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i; j < runs.size(); ++j) {
      const std::uint64_t lo = runs[i].lo + runs[j].lo;
      if (lo > limit) break;  // runs are sorted, so later j only grow
      const std::uint64_t hi = std::min(runs[i].hi + runs[j].hi, limit);
      ++diff[lo];
      --diff[hi + 1];
    }
  }
  Occupancy out(limit + 1, false);
  std::int64_t depth = 0;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    depth += diff[n];
    out[n] = depth > 0;
  }
  return out;
}

Occupancy sumset_shift_or(const Occupancy& set, std::uint64_t limit) {
  const std::size_t words = limit / 64 + 1;
  std::vector<std::uint64_t> src(words, 0), acc(words, 0);
  for (std::uint64_t i = 0; i < set.size() && i <= limit; ++i)
    if (set[i]) src[i / 64] |= 1ULL << (i % 64);
  for (std::uint64_t a = 0; a < set.size() && a <= limit; ++a) {
    if (!set[a]) continue;
    const std::size_t ws = a / 64;
    const unsigned bs = a % 64;
    for (std::size_t w = words; w-- > ws;) {
      std::uint64_t v = src[w - ws] << bs;
      if (bs != 0 && w - ws >= 1) v |= src[w - ws - 1] >> (64 - bs);
      acc[w] |= v;
    }
  }
  Occupancy out(limit + 1, false);
  for (std::uint64_t n = 0; n <= limit; ++n) out[n] = (acc[n / 64] >> (n % 64)) & 1ULL;
  return out;
}

CoverReport sumset_cover_check(unsigned k) {
  if (k >= kMaxStage) throw ContractError("stage index out of range");
  const std::uint64_t top = 6 * kPow5[k];
  const Occupancy sums = sumset(occupancy_of_A_k(k, top), top);
  CoverReport rep{k, {4, top}, std::nullopt, true};
  for (std::uint64_t n = 4; n <= top; ++n) {
    if (!sums[n]) {
      rep.first_gap = n;
      rep.pass = false;
      throw VerificationError("A_" + std::to_string(k) + " + A_" + std::to_string(k) +
                              " misses " + std::to_string(n));
    }
  }
  return rep;
}

std::vector<IntervalSum> stage_interval_sums(unsigned k) {
  require_stage(k);
  const std::uint64_t Q = kPow5[k - 1];
  const Interval I{2 * Q, 3 * Q};
  const Interval c{c_element(k), c_element(k)};
  const Interval B = B_interval(k);
  const Interval F = F_interval(k);
  auto plus = [](const Interval& x, const Interval& y) {
    return Interval{x.lo + y.lo, x.hi + y.hi};
  };
  return {
      {"I+I", plus(I, I), {4 * Q, 6 * Q}},
      {"I+c", plus(I, c), {6 * Q, 7 * Q}},
      {"I+B", plus(I, B), {7 * Q, 9 * Q - 1}},
      {"c+B", plus(c, B), {9 * Q, 10 * Q - 1}},
      {"B+B", plus(B, B), {10 * Q, 12 * Q - 2}},
      {"I+F", plus(I, F), {12 * Q - 1, 18 * Q}},
      {"B+F", plus(B, F), {15 * Q - 1, 21 * Q - 1}},
      {"F+F", plus(F, F), {20 * Q - 2, 30 * Q}},
  };
}

std::vector<Representation> representations(std::uint64_t n) {
  if (n < 4) throw ContractError("representations need n >= 4");
  std::vector<Representation> out;
  const std::uint64_t half = n / 2;
  for (const Interval& piece : stage_pieces(kMaxStage)) {
    if (piece.lo > half) break;
    for (std::uint64_t a = piece.lo; a <= std::min(piece.hi, half); ++a)
      if (in_A(n - a)) out.push_back({a, n - a});
  }
  return out;
}

RigidityReport rigidity_check(unsigned k) {
  require_stage(k);
  const Interval J = J_interval(k);
  const std::uint64_t c = c_element(k);
  const Interval B = B_interval(k);
  RigidityReport rep{k, J, 0, true};
  for (std::uint64_t n = J.lo; n <= J.hi; ++n) {
    const auto reps = representations(n);
    if (reps.size() != 1 || reps[0].a != c || !B.contains(reps[0].b)) {
      rep.pass = false;
      throw VerificationError("n = " + std::to_string(n) + " in J_" + std::to_string(k) +
                              " has " + std::to_string(reps.size()) +
                              " representations, not exactly c_k + B_k");
    }
    ++rep.checked;
  }
  return rep;
}

int PartitionRule::color(std::uint64_t x) const {
  const StageClassification cls = classify(x);
  if (cls.kind == Kind::none) throw ContractError(std::to_string(x) + " is not in A");
  const int col = cls.kind == Kind::c ? c_color(cls.stage) : other_color(x);
  if (col != 1 && col != 2) throw ContractError("partition colours must be 1 or 2");
  return col;
}

PartitionRule rule_all_c_to_one() {
  return {"all-c-to-1", [](unsigned) { return 1; },
          [](std::uint64_t x) { return static_cast<int>(x % 2) + 1; }};
}

PartitionRule rule_alternating() {
  return {"alternating", [](unsigned k) { return static_cast<int>(k % 2) + 1; },
          [](std::uint64_t x) { return static_cast<int>(x % 2) + 1; }};
}

PartitionRule rule_random(std::uint64_t seed) {
  const std::uint64_t s = splitmix64(seed);
  return {"random:" + std::to_string(seed),
          [s](unsigned k) { return static_cast<int>(splitmix64(s ^ (0xc0ffeeULL + k)) & 1) + 1; },
          [s](std::uint64_t x) { return static_cast<int>(splitmix64(s + x) >> 63) + 1; }};
}

std::optional<PartitionRule> parse_rule(const std::string& text) {
  if (text == "all-c-to-1") return rule_all_c_to_one();
  if (text == "alternating") return rule_alternating();
  const std::string prefix = "random:";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
    std::uint64_t seed = 0;
    for (char ch : text.substr(prefix.size())) {
      if (ch < '0' || ch > '9') return std::nullopt;
      seed = seed * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return rule_random(seed);
  }
  return std::nullopt;
}

GapReport gap_witness(const PartitionRule& rule, unsigned k) {
  require_stage(k);
  const std::uint64_t Q = kPow5[k - 1];
  const Interval J = J_interval(k);
  const std::uint64_t top = 10 * Q;

  GapReport rep;
  rep.k = k;
  rep.J = J;
  rep.truncation = top;
  rep.c_color = rule.c_color(k);
  if (rep.c_color != 1 && rep.c_color != 2) throw ContractError("partition colours must be 1 or 2");
  rep.gapped_color = 3 - rep.c_color;

  // colour[x] in {0 (not in A), 1, 2} for x <= top
  std::vector<std::uint8_t> colour(top + 1, 0);
  for (const Interval& piece : stage_pieces(kMaxStage)) {
    if (piece.lo > top) break;
    for (std::uint64_t x = piece.lo; x <= std::min(piece.hi, top); ++x)
      colour[x] = static_cast<std::uint8_t>(rule.color(x));
  }

  for (int col = 1; col <= 2; ++col) {
    std::vector<std::uint32_t> prefix(top + 2, 0);  // prefix[i] = #{x < i : colour col}
    for (std::uint64_t x = 0; x <= top; ++x) prefix[x + 1] = prefix[x] + (colour[x] == col);
    std::vector<bool> hit(J.length(), false);
    for (std::uint64_t a = 2; 2 * a <= J.hi; ++a) {
      if (colour[a] != col) continue;
      const std::uint64_t lo = std::max(a, J.lo > a ? J.lo - a : 0);
      const std::uint64_t hi = J.hi - a;
      if (lo > hi || prefix[hi + 1] == prefix[lo]) continue;
      for (std::uint64_t b = lo; b <= hi; ++b)
        if (colour[b] == col) hit[a + b - J.lo] = true;
    }
    const auto hits = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), true));
    (col == rep.gapped_color ? rep.gapped_hits : rep.c_color_hits) = hits;
  }
  rep.pass = rep.gapped_hits == 0;
  return rep;
}

}  // namespace erdos::basis

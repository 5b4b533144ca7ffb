#include <set>

#include "doctest.h"
#include "erdos/basis.hpp"
#include "erdos/errors.hpp"

using namespace erdos;
using namespace erdos::basis;

namespace {

// Direct membership from the defining formulas, stage by stage.
bool in_A_by_definition(std::uint64_t x) {
  if (x == 2 || x == 3) return true;
  for (std::uint64_t Q = 1; 4 * Q <= x; Q *= 5) {
    if (x == 4 * Q) return true;
    if (5 * Q <= x && x <= 6 * Q - 1) return true;
    if (10 * Q - 1 <= x && x <= 15 * Q) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("classify examples") {
  CHECK(classify(4).kind == Kind::c);
  CHECK(classify(4).stage == 1);
  CHECK(classify(9).kind == Kind::F);
  CHECK(classify(9).stage == 1);
  CHECK(classify(6).kind == Kind::none);
  CHECK(classify(2).kind == Kind::core);
  CHECK(classify(3).kind == Kind::core);
  CHECK(classify(0).kind == Kind::none);
  CHECK(classify(1).kind == Kind::none);
  CHECK(classify(20).kind == Kind::c);
  CHECK(classify(20).stage == 2);
  CHECK(classify(25).kind == Kind::B);
  CHECK(classify(49).kind == Kind::F);
  CHECK(classify(75).kind == Kind::F);
  CHECK(classify(76).kind == Kind::none);
}

TEST_CASE("enumerate_A examples") {
  CHECK(enumerate_A(0).empty());
  CHECK(enumerate_A(5) == std::vector<std::uint64_t>{2, 3, 4, 5});
  CHECK(enumerate_A(25) ==
        std::vector<std::uint64_t>{2, 3, 4, 5, 9, 10, 11, 12, 13, 14, 15, 20, 25});
}

TEST_CASE("classify, enumerate_A and the definition agree up to 1e7") {
  const auto listed = enumerate_A(10'000'000);
  std::size_t next = 0;
  for (std::uint64_t x = 0; x <= 10'000'000; ++x) {
    const bool listed_here = next < listed.size() && listed[next] == x;
    if (listed_here) ++next;
    const bool classified = classify(x).kind != Kind::none;
    REQUIRE(classified == listed_here);
  }
  REQUIRE(next == listed.size());
  for (std::uint64_t x = 0; x <= 200'000; ++x) REQUIRE(in_A(x) == in_A_by_definition(x));
}

TEST_CASE("classification kinds match their intervals") {
  for (unsigned k = 1; k <= 9; ++k) {
    CHECK(classify(c_element(k)).kind == Kind::c);
    const Interval B = B_interval(k), F = F_interval(k);
    for (std::uint64_t x : {B.lo, B.hi}) {
      CHECK(classify(x).kind == Kind::B);
      CHECK(classify(x).stage == k);
    }
    for (std::uint64_t x : {F.lo, F.hi}) {
      CHECK(classify(x).kind == Kind::F);
      CHECK(classify(x).stage == k);
    }
    CHECK(classify(B.lo - 1).kind != Kind::B);
    CHECK(classify(F.hi + 1).kind == Kind::none);
  }
}

TEST_CASE("run-based sumset matches shift-or and a double loop") {
  for (unsigned k = 0; k <= 5; ++k) {
    const std::uint64_t top = 6 * pow5(k);
    Occupancy occ(top + 1, false);
    for (std::uint64_t x = 0; x <= top; ++x) occ[x] = in_A_k(x, k);
    const Occupancy fast = sumset(occ, top);
    REQUIRE(fast == sumset_shift_or(occ, top));
    if (k <= 3) {
      Occupancy slow(top + 1, false);
      for (std::uint64_t a = 0; a <= top; ++a)
        for (std::uint64_t b = 0; a + b <= top; ++b)
          if (occ[a] && occ[b]) slow[a + b] = true;
      REQUIRE(fast == slow);
    }
  }
  // irregular set
  Occupancy odd(200, false);
  for (std::uint64_t x : {1, 7, 8, 9, 40, 41, 77, 150, 199}) odd[x] = true;
  CHECK(sumset(odd, 300) == sumset_shift_or(odd, 300));
}

TEST_CASE("sumset_cover_check for k <= 8") {
  const CoverReport r0 = sumset_cover_check(0);
  CHECK(r0.target == Interval{4, 6});
  CHECK(r0.pass);
  CHECK(sumset_cover_check(1).target == Interval{4, 30});
  for (unsigned k = 2; k <= 8; ++k) {
    const CoverReport r = sumset_cover_check(k);
    CHECK(r.pass);
    CHECK_FALSE(r.first_gap.has_value());
  }
  CHECK(sumset_cover_check(8).target.hi == 2'343'750);
}

TEST_CASE("the eight interval sums land where stated") {
  for (unsigned k = 1; k <= 8; ++k) {
    const std::uint64_t Q = pow5(k - 1);
    // I = [2Q, 3Q] sits inside A_k
    for (std::uint64_t x = 2 * Q; x <= 3 * Q; ++x) REQUIRE(in_A_k(x, k));
    const auto sums = stage_interval_sums(k);
    REQUIRE(sums.size() == 8);
    std::uint64_t reach = 4 * Q - 1;
    for (const IntervalSum& s : sums) {
      CHECK_MESSAGE(s.computed == s.expected, s.label);
      CHECK(s.computed.lo <= reach + 1);  // consecutive overlap
      reach = std::max(reach, s.computed.hi);
    }
    CHECK(reach == 30 * Q);
  }
}

TEST_CASE("representations examples") {
  CHECK(representations(9) == std::vector<Representation>{{4, 5}});
  CHECK(representations(45) == std::vector<Representation>{{20, 25}});
  CHECK(representations(4) == std::vector<Representation>{{2, 2}});
  CHECK(representations(12) == std::vector<Representation>{{2, 10}, {3, 9}});
  CHECK_THROWS_AS(representations(3), ContractError);
}

TEST_CASE("representations are exhaustive against a full scan") {
  for (std::uint64_t n = 4; n <= 3000; ++n) {
    std::vector<Representation> oracle;
    for (std::uint64_t a = 2; 2 * a <= n; ++a)
      if (in_A_by_definition(a) && in_A_by_definition(n - a)) oracle.push_back({a, n - a});
    REQUIRE(representations(n) == oracle);
  }
}

TEST_CASE("every n in [4, 6*5^6] has a representation") {
  const std::uint64_t top = 6 * pow5(6);
  Occupancy occ(top + 1, false);
  for (std::uint64_t x : enumerate_A(top)) occ[x] = true;
  const Occupancy s = sumset_shift_or(occ, top);
  for (std::uint64_t n = 4; n <= top; ++n) REQUIRE(s[n]);
}

TEST_CASE("rigidity_check") {
  const RigidityReport r1 = rigidity_check(1);
  CHECK(r1.J == Interval{9, 9});
  CHECK(r1.checked == 1);
  const RigidityReport r2 = rigidity_check(2);
  CHECK(r2.J == Interval{45, 49});
  for (std::uint64_t n = 45; n <= 49; ++n)
    CHECK(representations(n) == std::vector<Representation>{{20, n - 20}});
  for (unsigned k = 3; k <= 6; ++k) CHECK(rigidity_check(k).checked == pow5(k - 1));
}

TEST_CASE("partition rules") {
  const PartitionRule all = rule_all_c_to_one();
  for (unsigned k = 1; k <= 8; ++k) CHECK(all.color(c_element(k)) == 1);
  const PartitionRule alt = rule_alternating();
  CHECK(alt.color(c_element(1)) == 2);
  CHECK(alt.color(c_element(2)) == 1);
  CHECK_THROWS_AS(all.color(6), ContractError);
  CHECK(parse_rule("random:42").has_value());
  CHECK(parse_rule("random:42")->color(12) == rule_random(42).color(12));
  CHECK_FALSE(parse_rule("random:").has_value());
  CHECK_FALSE(parse_rule("bogus").has_value());
}

TEST_CASE("gap_witness examples") {
  const GapReport g = gap_witness(rule_all_c_to_one(), 3);
  CHECK(g.J == Interval{225, 249});
  CHECK(g.J.length() == 25);
  CHECK(g.c_color == 1);
  CHECK(g.gapped_color == 2);
  CHECK(g.gapped_hits == 0);
  CHECK(g.pass);

  const GapReport a4 = gap_witness(rule_alternating(), 4);
  CHECK(a4.c_color == 1);
  CHECK(a4.gapped_color == 2);
  CHECK(a4.pass);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GapReport r = gap_witness(rule_random(seed), 1);
    CHECK(r.J == Interval{9, 9});
    CHECK(r.pass);
  }
}

TEST_CASE("gap_witness hit counts match a direct sumset") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PartitionRule rule = rule_random(seed);
    for (unsigned k = 1; k <= 4; ++k) {
      const GapReport rep = gap_witness(rule, k);
      const Interval J = J_interval(k);
      std::set<std::uint64_t> hits[3];
      const auto elems = enumerate_A(J.hi);
      for (std::uint64_t a : elems)
        for (std::uint64_t b : elems)
          if (a <= b && J.contains(a + b) && rule.color(a) == rule.color(b))
            hits[rule.color(a)].insert(a + b);
      CHECK(rep.gapped_hits == hits[rep.gapped_color].size());
      CHECK(rep.c_color_hits == hits[rep.c_color].size());
      CHECK(rep.gapped_hits == 0);
    }
  }
}

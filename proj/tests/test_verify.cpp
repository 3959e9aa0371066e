#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "subsetsum/construct.hpp"
#include "subsetsum/verify.hpp"

using namespace subsetsum;

TEST_CASE("recurrence-family trace verifies stage by stage") {
  const TraceReport r = verify_trace(build_a_thm11(11, 5));
  REQUIRE(r.stages.size() == 3);
  REQUIRE(r.all_verified);
  REQUIRE(r.last_verified);
  REQUIRE(*r.last_verified == 5);
  for (const StageReport& s : r.stages) {
    REQUIRE(s.status == StageStatus::verified);
    REQUIRE(s.match.equal);
  }
}

TEST_CASE("progression-family trace verifies stage by stage") {
  const TraceReport r = verify_trace(build_a_thm13(4, 6, 4));
  REQUIRE(r.stages.size() == 3);
  REQUIRE(r.all_verified);
  REQUIRE(*r.last_verified == 4);
}

TEST_CASE("a tampered trace is flagged at the damaged stages") {
  ConstructionTrace t = build_a_thm11(11, 5);
  for (Stage& s : t.steps)
    s.cumulative.erase(std::remove(s.cumulative.begin(), s.cumulative.end(), u64{138}),
                       s.cumulative.end());
  const TraceReport r = verify_trace(t);
  REQUIRE_FALSE(r.all_verified);
  REQUIRE(r.stages[0].status == StageStatus::verified);
  REQUIRE(r.stages[1].status == StageStatus::mismatch);
  REQUIRE(r.stages[2].status == StageStatus::mismatch);
  REQUIRE(*r.last_verified == 3);
  // the full span needs every element, so it must now be missing
  const auto& absent = r.stages[1].match.unexpected_absent;
  REQUIRE_FALSE(absent.empty());
  REQUIRE(absent.back() == 616);
}

TEST_CASE("stages beyond the window budget are skipped, not failed") {
  const TraceReport r = verify_trace(build_a_thm13(4, 6, 4), 60);  // spans 26, 50, 98
  REQUIRE(r.stages.size() == 3);
  REQUIRE(r.stages[0].status == StageStatus::verified);
  REQUIRE(r.stages[1].status == StageStatus::verified);
  REQUIRE(r.stages[2].status == StageStatus::skipped);
  REQUIRE_FALSE(r.stages[2].note.empty());
  REQUIRE_FALSE(r.all_verified);
  REQUIRE(*r.last_verified == 3);
}

TEST_CASE("complement agrees with the excluded set over the full window") {
  const ConstructionTrace t = build_a_thm11(11, 5);
  const std::vector<u64>& a5 = t.steps.back().cumulative;
  const ComplementReport r = verify_complement(a5, BSpec::recurrence(11), 2464);
  REQUIRE(r.equal);
  REQUIRE(r.window == 2464);
  REQUIRE(r.pending == std::vector<u64>{2348, 2426, 2453});
  REQUIRE(r.wrong_present.empty());
  REQUIRE(r.wrong_absent.empty());
  REQUIRE_FALSE(r.first_disagreement.has_value());
  REQUIRE(r.stage);
  REQUIRE(*r.stage == 5);
  REQUIRE(r.full_equality_cutoff == 2195);
}

TEST_CASE("progression snapshot has no pending gaps") {
  const std::vector<u64> a{1, 2, 5, 6, 12, 24, 48};
  const ComplementReport r = verify_complement(a, BSpec::progression(4, 6), 98);
  REQUIRE(r.equal);
  REQUIRE(r.pending.empty());
  REQUIRE(*r.stage == 4);
  REQUIRE(r.full_equality_cutoff == 48);
}

TEST_CASE("complement check against a short explicit exclusion list") {
  const std::vector<u64> ok{1, 2};
  REQUIRE(verify_complement(ok, BSpec::explicit_list({4}), 3).equal);

  // window larger than the achievable sum is rejected, not silently clipped
  REQUIRE_THROWS_AS(verify_complement(ok, BSpec::explicit_list({4}), 4), InvalidInput);

  // window beyond the last explicit term: membership there is unknown
  const std::vector<u64> a{1, 2, 4};
  REQUIRE_THROWS_AS(verify_complement(a, BSpec::explicit_list({4}), 7), InvalidInput);

  const std::vector<u64> covers{1, 2, 3};
  const ComplementReport wp = verify_complement(covers, BSpec::explicit_list({4}), 4);
  REQUIRE_FALSE(wp.equal);
  REQUIRE(wp.wrong_present == std::vector<u64>{4});
  REQUIRE(*wp.first_disagreement == 4);

  const std::vector<u64> gappy{1, 5};
  const ComplementReport wa = verify_complement(gappy, BSpec::explicit_list({3}), 3);
  REQUIRE_FALSE(wa.equal);
  REQUIRE(wa.wrong_absent == std::vector<u64>{2});
  REQUIRE(*wa.first_disagreement == 2);

  REQUIRE_THROWS_AS(verify_complement(std::vector<u64>{2, 2}, BSpec::explicit_list({9}), 2),
                    InvalidInput);
}

TEST_CASE("complement equality is stable as the window shrinks") {
  const ConstructionTrace t = build_a_thm11(12, 4);
  const std::vector<u64>& a4 = t.steps.back().cumulative;
  const u64 sum = t.steps.back().expected.span;
  for (u64 m : {sum, sum / 2, u64{200}, u64{50}})
    REQUIRE(verify_complement(a4, BSpec::recurrence(12), m).equal);
}

TEST_CASE("forced continuation after a complete base list") {
  const std::vector<u64> base{1, 2, 3, 4};
  const Lemma21Report r = check_lemma21(base, 11, 38);
  REQUIRE(r.holds);
  REQUIRE(r.forced_next == 12);
  REQUIRE(r.unique_forced);
  REQUIRE(r.midpoint_pattern_ok);
  REQUIRE(r.next_lo == 13);
  REQUIRE(r.next_hi == 23);
  REQUIRE(r.window_exact);

  const Lemma21Report s = check_lemma21(std::vector<u64>{1, 2}, 4, 14);
  REQUIRE(s.holds);
  REQUIRE(s.forced_next == 5);
  REQUIRE(s.next_lo == 6);
  REQUIRE(s.next_hi == 9);
}

TEST_CASE("forced-continuation preconditions") {
  const std::vector<u64> base{1, 2, 3, 4};
  REQUIRE_THROWS_AS(check_lemma21(base, 11, 23), InvalidInput);   // second term too small
  REQUIRE_THROWS_AS(check_lemma21(std::vector<u64>{1, 3}, 5, 14), InvalidInput);  // base has a gap
  REQUIRE_THROWS_AS(check_lemma21(base, 11, 38, 16), ResourceLimit);
}

TEST_CASE("forced continuation holds across the admissible first terms") {
  std::vector<u64> firsts{4, 7, 8};
  for (u64 v = 11; v <= 60; ++v) firsts.push_back(v);
  for (u64 b1 : firsts) {
    const std::vector<u64> base = build_a1(b1);
    const Lemma21Report r = check_lemma21(base, b1, 2 * b1 + 2);
    REQUIRE(r.holds);
    REQUIRE(r.forced_next == b1 + 1);
    REQUIRE(r.next_lo == b1 + 2);
    REQUIRE(r.next_hi == 2 * b1 + 1);
  }
}

// Staged construction of the sequence A whose subset sums avoid exactly the
// excluded terms, together with the hole pattern each stage must produce.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "subsetsum/errors.hpp"
#include "subsetsum/sequences.hpp"
#include "subsetsum/sumset.hpp"

namespace subsetsum {

struct Stage {
  std::size_t k = 0;           // stage index (matches the family's numbering)
  std::vector<u64> added;      // elements introduced at this stage, ascending
  std::vector<u64> cumulative; // full element list A_k, ascending
  HolePattern expected;        // pattern P(A_k) must equal
};

struct ConstructionTrace {
  BSpec bspec;
  std::vector<Stage> steps;
};

// Smallest-footprint base list: strictly increasing elements of [1, b1-1]
// summing to b1-1 with the prefix-sum condition a_{i+1} <= 1 + sum so far,
// which makes P of the list the full interval [0, b1-1]. Depth-first search
// preferring the largest feasible next element.
inline std::vector<u64> build_a1(u64 b1) {
  if (b1 < 2) throw InvalidInput("base construction needs b1 >= 2");
  const u64 target = b1 - 1;
  std::vector<u64> chosen;
  u64 sum = 0;

  // Recursive lambda via explicit stack of "next candidate to try" values.
  struct Frame { u64 candidate; };
  std::vector<Frame> stack;
  auto max_next = [&]() {
    u64 room = target - sum;          // what is still needed
    u64 cap = sum + 1;                // prefix-sum completeness bound
    return std::min(room, cap);
  };
  stack.push_back({max_next()});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const u64 lo = chosen.empty() ? 1 : chosen.back() + 1;
    if (f.candidate < lo) {           // exhausted this level; backtrack
      stack.pop_back();
      if (!chosen.empty()) {
        sum -= chosen.back();
        chosen.pop_back();
      }
      continue;
    }
    const u64 a = f.candidate;
    --f.candidate;                    // next time at this level, try smaller
    chosen.push_back(a);
    sum += a;
    if (sum == target) return chosen;
    stack.push_back({max_next()});
  }
  throw NoBaseConstruction("no complete base list sums to " + std::to_string(target) +
                           " within [1, " + std::to_string(target) + "]");
}

namespace detail {

inline void construct_check(bool ok, const char* what) {
  if (!ok) throw Error(std::string("construction invariant violated: ") + what);
}

// Append keeping the cumulative list strictly increasing; a violation would
// mean a stage re-added an existing element or broke the ordering.
inline void append_ascending(std::vector<u64>& cumulative, std::span<const u64> added) {
  for (u64 a : added) {
    construct_check(cumulative.empty() || a > cumulative.back(),
                    "stage element not above all previous elements");
    cumulative.push_back(a);
  }
}

// Every stage's element sum must equal its pattern span, or the windowed
// equality check downstream could not possibly hold.
inline void check_span_identity(const Stage& s) {
  u64 sum = 0;
  for (u64 a : s.cumulative) sum = checked_add(sum, a);
  construct_check(sum == s.expected.span, "element sum differs from pattern span");
}

}  // namespace detail

// Expected hole pattern at stage k of the recurrence family:
// [0, b_k + b_{k-1}] minus {b_1..b_k} and the terminal holes
// b_k + b_{k-1} - b_i for i = 1..k-2.
inline HolePattern expected_pattern_fact1(std::span<const u64> b, std::size_t k) {
  if (k < 3) throw InvalidInput("recurrence-family patterns start at stage 3");
  if (b.size() < k) throw InvalidInput("need at least k terms of B");
  const u64 span = checked_add(b[k - 1], b[k - 2]);
  std::vector<u64> holes(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = k - 2; i >= 1; --i)  // descending b_i gives ascending holes
    holes.push_back(checked_sub(span, b[i - 1]));
  return make_hole_pattern(span, std::move(holes));
}

// Expected hole pattern at stage k of the progression family:
// [0, 2*b1 + (2^k - 1)*d] minus the first 2^k progression terms.
inline HolePattern expected_pattern_fact2(u64 b1, u64 d, std::size_t k) {
  BSpec spec = BSpec::progression(b1, d);  // validates b1 and d
  if (k < 2) throw InvalidInput("progression-family patterns start at stage 2");
  const u64 count = checked_pow2(k);
  const u64 span = checked_add(checked_mul(2, spec.b1),
                               checked_mul(count - 1, spec.d));
  std::vector<u64> holes;
  holes.reserve(count);
  u64 v = spec.b1;
  for (u64 i = 0; i < count; ++i, v = checked_add(v, spec.d)) holes.push_back(v);
  return make_hole_pattern(span, std::move(holes));
}

// Stages 3..k_max of the recurrence-family construction. Stage 3 seeds the
// base list plus five fixed elements; each later stage adds three.
inline ConstructionTrace build_a_thm11(u64 b1, std::size_t k_max) {
  if (k_max < 3) throw InvalidInput("recurrence-family construction starts at stage 3");
  const std::vector<u64> b = gen_b_thm11(b1, k_max);  // validates b1 >= 11
  auto bt = [&](std::size_t i) { return b[i - 1]; };  // 1-based accessor

  ConstructionTrace trace;
  trace.bspec = BSpec::recurrence(b1);

  Stage s3;
  s3.k = 3;
  s3.added = build_a1(b1);
  for (u64 off = 1; off <= 3; ++off) s3.added.push_back(checked_add(b1, off));
  s3.added.push_back(checked_add(b1, bt(2)));
  s3.added.push_back(checked_add(checked_sub(checked_mul(2, bt(2)), checked_mul(2, b1)), 2));
  detail::append_ascending(s3.cumulative, s3.added);
  s3.expected = expected_pattern_fact1(b, 3);
  detail::check_span_identity(s3);
  trace.steps.push_back(std::move(s3));

  // Closed form for max A_k, used by the ordering checks below.
  auto max_closed = [&](std::size_t k) {
    if (k == 3)
      return checked_add(checked_sub(checked_mul(2, bt(2)), checked_mul(2, b1)), 2);
    return checked_sub(checked_add(bt(k - 1), checked_mul(2, bt(k - 2))), bt(k - 3));
  };

  for (std::size_t k = 4; k <= k_max; ++k) {
    const Stage& prev = trace.steps.back();
    const u64 lo = checked_add(bt(k - 1), checked_mul(2, bt(k - 3)));
    const u64 mid = checked_sub(checked_add(bt(k - 1), bt(k - 2)), bt(k - 3));
    const u64 hi = checked_sub(checked_add(bt(k - 1), checked_mul(2, bt(k - 2))), bt(k - 3));
    detail::construct_check(prev.cumulative.back() == max_closed(k - 1),
                            "previous stage maximum differs from closed form");
    detail::construct_check(prev.cumulative.back() < lo, "stage elements must exceed prior maximum");
    detail::construct_check(lo < mid && mid < hi, "stage elements out of order");

    Stage s;
    s.k = k;
    s.added = {lo, mid, hi};
    s.cumulative = prev.cumulative;
    detail::append_ascending(s.cumulative, s.added);
    s.expected = expected_pattern_fact1(b, k);
    detail::check_span_identity(s);
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

// Stages 2..k_max of the progression-family construction. Stage 2 seeds the
// base list plus {b1+1, d, 2d}; stage k+1 adds the single element 2^k * d.
inline ConstructionTrace build_a_thm13(u64 b1, u64 d, std::size_t k_max) {
  if (k_max < 2) throw InvalidInput("progression-family construction starts at stage 2");
  ConstructionTrace trace;
  trace.bspec = BSpec::progression(b1, d);  // validates b1 and d

  Stage s2;
  s2.k = 2;
  s2.added = build_a1(b1);
  s2.added.push_back(checked_add(b1, 1));
  s2.added.push_back(d);
  s2.added.push_back(checked_mul(2, d));
  detail::append_ascending(s2.cumulative, s2.added);
  s2.expected = expected_pattern_fact2(b1, d, 2);
  detail::check_span_identity(s2);
  trace.steps.push_back(std::move(s2));

  for (std::size_t k = 3; k <= k_max; ++k) {
    const Stage& prev = trace.steps.back();
    const u64 next = checked_mul(checked_pow2(k - 1), d);
    Stage s;
    s.k = k;
    s.added = {next};
    s.cumulative = prev.cumulative;
    detail::append_ascending(s.cumulative, s.added);
    s.expected = expected_pattern_fact2(b1, d, k);
    detail::check_span_identity(s);
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

}  // namespace subsetsum

// Exact subset-sum sets P(S) on a bounded window [0, cap], stored as dense
// bit vectors. Adding an element is a word-shifted OR, so building P(S) for
// n elements over a w-bit window costs O(n * w / 64).
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "subsetsum/errors.hpp"

namespace subsetsum {

// Window budget for dense bit vectors, in bits. Every constructor takes an
// explicit override; the CLI wires SUBSETSUM_MEM_BUDGET to it.
inline constexpr u64 kDefaultWindowBudgetBits = u64{1} << 25;

// Characteristic bit vector of P(S) over [0, cap]. Bit 0 is always set
// (empty subset). Sums beyond cap are silently dropped: callers pick
// cap = sum(S) when they need the exact set. Immutable once built.
class SumSet {
 public:
  static SumSet empty(u64 cap, u64 budget_bits = kDefaultWindowBudgetBits) {
    if (budget_bits == 0 || cap > budget_bits - 1)
      throw ResourceLimit("window of " + std::to_string(cap) + "+1 bits exceeds budget of " +
                          std::to_string(budget_bits) + " bits");
    SumSet s;
    s.cap_ = cap;
    s.words_.assign(cap / 64 + 1, 0);
    s.words_[0] = 1;  // 0 = empty-subset sum
    return s;
  }

  u64 cap() const { return cap_; }

  bool contains(u64 v) const {
    return v <= cap_ && ((words_[v >> 6] >> (v & 63)) & 1u) != 0;
  }

  // 64-bit slice covering values [64*i, 64*i + 63].
  u64 word(u64 i) const { return words_[i]; }
  u64 word_count() const { return words_.size(); }

  u64 count() const {
    u64 c = 0;
    for (u64 w : words_) c += static_cast<u64>(std::popcount(w));
    return c;
  }

  // Largest member (there is always at least 0).
  u64 max_member() const {
    for (u64 i = words_.size(); i-- > 0;)
      if (words_[i] != 0) return i * 64 + (63 - static_cast<u64>(std::countl_zero(words_[i])));
    return 0;
  }

  // P(S ∪ {a}) over the same window: bit v set iff v ∈ this or v-a ∈ this.
  SumSet with_element(u64 a) const {
    SumSet r = *this;
    r.or_shifted(a);
    return r;
  }

  bool operator==(const SumSet&) const = default;

  friend SumSet subset_sums(std::span<const u64> elements, u64 cap, u64 budget_bits);

 private:
  SumSet() = default;

  // In-place words |= words << a. Walking top-down keeps every source word
  // un-clobbered at the moment it is read, so no scratch copy is needed.
  void or_shifted(u64 a) {
    if (a == 0) throw InvalidInput("sum-set elements must be >= 1");
    if (a > cap_) return;  // every translate lands beyond the window
    const u64 word_shift = a >> 6;
    const u64 bit_shift = a & 63;
    for (u64 i = words_.size(); i-- > word_shift;) {
      u64 v = words_[i - word_shift] << bit_shift;
      if (bit_shift != 0 && i > word_shift)
        v |= words_[i - word_shift - 1] >> (64 - bit_shift);
      words_[i] |= v;
    }
    mask_top();
  }

  void mask_top() {
    const u64 used = (cap_ + 1) & 63;
    if (used != 0) words_.back() &= (u64{1} << used) - 1;
  }

  u64 cap_ = 0;
  std::vector<u64> words_;
};

// "[0, span] minus explicit holes" normal form for expected sum sets.
// Holes are strictly increasing and lie in [1, span]; 0 is never a hole.
struct HolePattern {
  u64 span = 0;
  std::vector<u64> holes;
};

inline void validate_hole_pattern(const HolePattern& p) {
  for (std::size_t i = 0; i < p.holes.size(); ++i) {
    if (p.holes[i] < 1 || p.holes[i] > p.span)
      throw InvalidInput("hole " + std::to_string(p.holes[i]) + " outside [1, " +
                         std::to_string(p.span) + "]");
    if (i > 0 && p.holes[i] <= p.holes[i - 1])
      throw InvalidInput("holes must be strictly increasing");
  }
}

inline HolePattern make_hole_pattern(u64 span, std::vector<u64> holes) {
  HolePattern p{span, std::move(holes)};
  validate_hole_pattern(p);
  return p;
}

// Symmetric difference, restricted to [0, pattern.span], between a computed
// sum set and a declared pattern.
struct MatchReport {
  bool equal = true;
  std::vector<u64> unexpected_present;  // member of the sum set, but declared a hole
  std::vector<u64> unexpected_absent;   // missing from the sum set, but not declared
};

inline SumSet empty_sumset(u64 cap, u64 budget_bits = kDefaultWindowBudgetBits) {
  return SumSet::empty(cap, budget_bits);
}

inline SumSet add_element(const SumSet& s, u64 a) { return s.with_element(a); }

// Folds the shifted-OR step over the whole list. Order never matters; the
// elements must be distinct and positive.
inline SumSet subset_sums(std::span<const u64> elements, u64 cap,
                          u64 budget_bits = kDefaultWindowBudgetBits) {
  std::vector<u64> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("sum-set elements must be distinct");
  SumSet s = SumSet::empty(cap, budget_bits);
  for (u64 a : elements) s.or_shifted(a);
  return s;
}

inline SumSet subset_sums(std::initializer_list<u64> elements, u64 cap,
                          u64 budget_bits = kDefaultWindowBudgetBits) {
  return subset_sums(std::span<const u64>(elements.begin(), elements.end()), cap, budget_bits);
}

inline MatchReport matches_pattern(const SumSet& s, const HolePattern& p) {
  validate_hole_pattern(p);
  if (p.span > s.cap())
    throw InvalidInput("pattern span " + std::to_string(p.span) + " exceeds window cap " +
                       std::to_string(s.cap()));
  MatchReport r;
  std::size_t h = 0;
  for (u64 base = 0; base <= p.span; base += 64) {
    // Expected word: all ones up to span, with declared holes cleared.
    const u64 remaining = p.span - base;
    const u64 window = remaining >= 63 ? ~u64{0} : (u64{1} << (remaining + 1)) - 1;
    u64 expect = window;
    while (h < p.holes.size() && p.holes[h] < base + 64) {
      expect &= ~(u64{1} << (p.holes[h] & 63));
      ++h;
    }
    u64 diff = (s.word(base >> 6) ^ expect) & window;
    while (diff != 0) {
      const u64 bit = static_cast<u64>(std::countr_zero(diff));
      diff &= diff - 1;
      const u64 v = base + bit;
      if ((expect >> bit) & 1u)
        r.unexpected_absent.push_back(v);
      else
        r.unexpected_present.push_back(v);
    }
  }
  r.equal = r.unexpected_present.empty() && r.unexpected_absent.empty();
  return r;
}

// Ascending list of v in [lo, hi] missing from the sum set.
inline std::vector<u64> holes_in_range(const SumSet& s, u64 lo, u64 hi) {
  if (lo > hi || hi > s.cap())
    throw InvalidInput("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] outside window [0, " + std::to_string(s.cap()) + "]");
  std::vector<u64> out;
  for (u64 w = lo >> 6; w <= (hi >> 6); ++w) {
    u64 absent = ~s.word(w);
    if (w == (lo >> 6)) absent &= ~u64{0} << (lo & 63);
    if (w == (hi >> 6) && (hi & 63) != 63) absent &= (u64{1} << ((hi & 63) + 1)) - 1;
    while (absent != 0) {
      const u64 bit = static_cast<u64>(std::countr_zero(absent));
      absent &= absent - 1;
      out.push_back(w * 64 + bit);
    }
  }
  return out;
}

}  // namespace subsetsum

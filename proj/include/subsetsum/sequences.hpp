// Generation and classification of the excluded sequences B: the cubic-ish
// recurrence family, bounded-difference arithmetic progressions, and
// hypothesis checks for the known existence / non-existence results.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subsetsum/errors.hpp"

namespace subsetsum {

// b1 values admitted by the existence theorems (every other b1 below 11 is
// ruled out or needs extra conditions).
inline bool admissible_b1(u64 b1) { return b1 == 4 || b1 == 7 || b1 == 8 || b1 >= 11; }

// Descriptor of a B family: the recurrence family, an arithmetic
// progression, or an explicit finite prefix.
struct BSpec {
  enum class Family { recurrence, progression, explicit_prefix };

  Family family = Family::explicit_prefix;
  u64 b1 = 0;
  u64 d = 0;                // progression only
  std::vector<u64> prefix;  // explicit only

  static BSpec recurrence(u64 b1) {
    if (b1 < 11) throw InvalidInput("recurrence family requires b1 >= 11");
    BSpec s;
    s.family = Family::recurrence;
    s.b1 = b1;
    return s;
  }

  static BSpec progression(u64 b1, u64 d) {
    if (!admissible_b1(b1))
      throw InvalidInput("progression family requires b1 in {4,7,8} or b1 >= 11");
    if (d < checked_add(b1, 2) || d > checked_add(checked_mul(2, b1), 1))
      throw InvalidInput("progression family requires b1+2 <= d <= 2*b1+1");
    BSpec s;
    s.family = Family::progression;
    s.b1 = b1;
    s.d = d;
    return s;
  }

  static BSpec explicit_list(std::vector<u64> prefix) {
    if (prefix.empty()) throw InvalidInput("explicit B prefix must be nonempty");
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] == 0) throw InvalidInput("B terms must be positive");
      if (i > 0 && prefix[i] <= prefix[i - 1])
        throw InvalidInput("B prefix must be strictly increasing");
    }
    BSpec s;
    s.family = Family::explicit_prefix;
    s.b1 = prefix.front();
    s.prefix = std::move(prefix);
    return s;
  }
};

// [b_1, ..., b_n] from b_2 = 3b_1 + 5, b_3 = 3b_2 + 2, b_{k+1} = 3b_k + 4b_{k-1}.
inline std::vector<u64> gen_b_thm11(u64 b1, std::size_t n) {
  if (b1 < 11) throw InvalidInput("recurrence family requires b1 >= 11");
  if (n < 1) throw InvalidInput("sequence length must be >= 1");
  std::vector<u64> b{b1};
  if (n >= 2) b.push_back(checked_add(checked_mul(3, b1), 5));
  if (n >= 3) b.push_back(checked_add(checked_mul(3, b[1]), 2));
  while (b.size() < n)
    b.push_back(checked_add(checked_mul(3, b[b.size() - 1]), checked_mul(4, b[b.size() - 2])));
  return b;
}

// [b1, b1+d, ..., b1+(n-1)d], with the theorem's bounds on d enforced.
inline std::vector<u64> gen_b_ap(u64 b1, u64 d, std::size_t n) {
  BSpec spec = BSpec::progression(b1, d);  // validates b1 and d
  if (n < 1) throw InvalidInput("sequence length must be >= 1");
  std::vector<u64> b{spec.b1};
  while (b.size() < n) b.push_back(checked_add(b.back(), d));
  return b;
}

// All B members <= limit. For an explicit prefix the membership is only
// known up to the last listed term; callers must not ask beyond it.
inline std::vector<u64> b_terms_up_to(const BSpec& spec, u64 limit) {
  std::vector<u64> out;
  switch (spec.family) {
    case BSpec::Family::recurrence: {
      std::vector<u64> b;
      try {
        // Generate until the terms leave [0, limit]; overflow past the limit
        // just means we are done.
        for (std::size_t n = 1;; ++n) {
          b = gen_b_thm11(spec.b1, n);
          if (b.back() > limit) break;
          out.push_back(b.back());
        }
      } catch (const Overflow&) {
      }
      return out;
    }
    case BSpec::Family::progression:
      for (u64 v = spec.b1; v <= limit; v = checked_add(v, spec.d)) out.push_back(v);
      return out;
    case BSpec::Family::explicit_prefix:
      if (limit > spec.prefix.back())
        throw InvalidInput("explicit B membership unknown beyond " +
                           std::to_string(spec.prefix.back()));
      for (u64 v : spec.prefix)
        if (v <= limit) out.push_back(v);
      return out;
  }
  throw InvalidInput("bad BSpec family");
}

// Three-valued verdict for a hypothesis evaluated on a finite prefix.
// Conditions that would need terms beyond the prefix stay undetermined.
enum class Verdict { no, yes, undetermined };

struct Condition {
  Verdict state = Verdict::undetermined;
  std::string witness;
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    default: return "undetermined";
  }
}

// Hypothesis-set evaluation of a B prefix against the known results and the
// open comparison sequence d_n. "yes" always means: every condition that is
// checkable on this prefix holds; the infinite statements stay prefix-limited.
struct BClassification {
  Condition thm_c;   // b1 admissible and b_{n+1} >= 3 b_n + 5 on every checked step
  Condition thm_e;   // b2 >= 3b1+5, b3 >= 3b2+3, then b_{n+1} > 3 b_n - b_{n-2}
  Condition thm_d;   // one of the non-existence base cases
  std::string thm_d_case;
  Condition thm12;   // b2 = 3b1+3 or b2 = 3b1+2 (with b1 >= 3)
  std::string thm12_case;
  std::vector<u64> comparison_d;        // d_1 = 10, d_2 = 3b1+4, d_3 = 3b2+2, d_{n+1} = 3b_n - b_{n-2}
  std::vector<std::size_t> equal_indices;  // 1-based m with b_m = d_m
  Condition problem1;                   // unique m >= 3 with b_m = d_m, b_n > d_n elsewhere
  std::optional<std::size_t> problem1_m;
  bool problem1_m1_ambiguous = false;   // b_1 = d_1 = 10: reading of the m = 1 case is unsettled
};

namespace detail {

inline std::string ineq(const char* lhs, u64 lv, const char* rel, const char* rhs, u64 rv) {
  return std::string(lhs) + " = " + std::to_string(lv) + " " + rel + " " + rhs + " = " +
         std::to_string(rv);
}

}  // namespace detail

inline BClassification classify_b(std::span<const u64> prefix) {
  if (prefix.empty()) throw InvalidInput("B prefix must be nonempty");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == 0) throw InvalidInput("B terms must be positive");
    if (i > 0 && prefix[i] <= prefix[i - 1])
      throw InvalidInput("B prefix must be strictly increasing");
  }
  const std::size_t n = prefix.size();
  const u64 b1 = prefix[0];
  BClassification c;

  // Growth condition b_{k+1} >= 3 b_k + 5 plus the admissible b1 set.
  if (!admissible_b1(b1)) {
    c.thm_c = {Verdict::no, "b_1 = " + std::to_string(b1) + " not in {4,7,8} u [11,inf)"};
  } else {
    c.thm_c = {n >= 2 ? Verdict::yes : Verdict::undetermined,
               n >= 2 ? "all checked steps satisfy b_{k+1} >= 3*b_k + 5 (prefix-limited)"
                      : "no step b_2 >= 3*b_1 + 5 checkable on a length-1 prefix"};
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const u64 bound = checked_add(checked_mul(3, prefix[k]), 5);
      if (prefix[k + 1] < bound) {
        c.thm_c = {Verdict::no,
                   detail::ineq(("b_" + std::to_string(k + 2)).c_str(), prefix[k + 1], "<",
                                ("3*b_" + std::to_string(k + 1) + " + 5").c_str(), bound)};
        break;
      }
    }
  }

  // Relaxed growth: b_2 >= 3b_1+5, b_3 >= 3b_2+3, then b_{k+1} > 3b_k - b_{k-2}.
  if (!admissible_b1(b1)) {
    c.thm_e = {Verdict::no, "b_1 = " + std::to_string(b1) + " not in {4,7,8} u [11,inf)"};
  } else if (n < 2) {
    c.thm_e = {Verdict::undetermined, "needs b_2 and b_3"};
  } else if (prefix[1] < checked_add(checked_mul(3, b1), 5)) {
    c.thm_e = {Verdict::no, detail::ineq("b_2", prefix[1], "<", "3*b_1 + 5",
                                         checked_add(checked_mul(3, b1), 5))};
  } else if (n < 3) {
    c.thm_e = {Verdict::undetermined, "needs b_3"};
  } else if (prefix[2] < checked_add(checked_mul(3, prefix[1]), 3)) {
    c.thm_e = {Verdict::no, detail::ineq("b_3", prefix[2], "<", "3*b_2 + 3",
                                         checked_add(checked_mul(3, prefix[1]), 3))};
  } else {
    c.thm_e = {Verdict::yes, "all checked conditions hold (prefix-limited)"};
    for (std::size_t k = 3; k < n; ++k) {
      // step n = k (1-based), checking b_{k+1} > 3 b_k - b_{k-2}
      const u64 bound = checked_sub(checked_mul(3, prefix[k - 1]), prefix[k - 3]);
      if (prefix[k] <= bound) {
        c.thm_e = {Verdict::no,
                   detail::ineq(("b_" + std::to_string(k + 1)).c_str(), prefix[k], "<=",
                                ("3*b_" + std::to_string(k) + " - b_" + std::to_string(k - 2)).c_str(),
                                bound)};
        break;
      }
    }
  }

  // Known non-existence base cases.
  if (b1 == 3 || b1 == 5 || b1 == 6 || b1 == 9 || b1 == 10) {
    c.thm_d = {Verdict::yes, "b_1 = " + std::to_string(b1) + " in {3,5,6,9,10}"};
    c.thm_d_case = "b1 in {3,5,6,9,10}";
  } else if (n >= 2 && prefix[1] == checked_add(checked_mul(3, b1), 4)) {
    c.thm_d = {Verdict::yes, detail::ineq("b_2", prefix[1], "=", "3*b_1 + 4", prefix[1])};
    c.thm_d_case = "b2 = 3*b1 + 4";
  } else if (n >= 2 && b1 == 1 && prefix[1] == 9) {
    c.thm_d = {Verdict::yes, "b_1 = 1, b_2 = 9"};
    c.thm_d_case = "b1 = 1, b2 = 9";
  } else if (n >= 2 && b1 == 2 && prefix[1] == 15) {
    c.thm_d = {Verdict::yes, "b_1 = 2, b_2 = 15"};
    c.thm_d_case = "b1 = 2, b2 = 15";
  } else if (n < 2) {
    c.thm_d = {Verdict::undetermined, "cases involving b_2 need a longer prefix"};
  } else {
    c.thm_d = {Verdict::no, "no non-existence base case matches"};
  }

  // b_2 = 3 b_1 + 3 or 3 b_1 + 2 (hypothesis also wants b_1 >= 3).
  if (b1 < 3) {
    c.thm12 = {Verdict::no, "b_1 = " + std::to_string(b1) + " < 3"};
  } else if (n < 2) {
    c.thm12 = {Verdict::undetermined, "needs b_2"};
  } else if (prefix[1] == checked_add(checked_mul(3, b1), 3)) {
    c.thm12 = {Verdict::yes, detail::ineq("b_2", prefix[1], "=", "3*b_1 + 3", prefix[1])};
    c.thm12_case = "b2 = 3*b1 + 3";
  } else if (prefix[1] == checked_add(checked_mul(3, b1), 2)) {
    c.thm12 = {Verdict::yes, detail::ineq("b_2", prefix[1], "=", "3*b_1 + 2", prefix[1])};
    c.thm12_case = "b2 = 3*b1 + 2";
  } else {
    c.thm12 = {Verdict::no, "b_2 is neither 3*b_1 + 3 nor 3*b_1 + 2"};
  }

  // Comparison sequence d_n, computable exactly as far as the prefix reaches.
  c.comparison_d.push_back(10);
  if (n >= 2) c.comparison_d.push_back(checked_add(checked_mul(3, b1), 4));
  if (n >= 3) c.comparison_d.push_back(checked_add(checked_mul(3, prefix[1]), 2));
  for (std::size_t m = 4; m <= n; ++m)
    c.comparison_d.push_back(checked_sub(checked_mul(3, prefix[m - 2]), prefix[m - 4]));
  for (std::size_t m = 1; m <= n; ++m)
    if (prefix[m - 1] == c.comparison_d[m - 1]) c.equal_indices.push_back(m);
  c.problem1_m1_ambiguous = (b1 == 10);

  std::size_t below = 0;  // some b_n < d_n: hypothesis definitely fails
  std::optional<std::size_t> first_below;
  for (std::size_t m = 1; m <= n; ++m)
    if (prefix[m - 1] < c.comparison_d[m - 1] && ++below == 1) first_below = m;
  std::vector<std::size_t> eligible;  // equalities at m >= 3, as the problem demands
  for (std::size_t m : c.equal_indices)
    if (m >= 3) eligible.push_back(m);

  if (below > 0) {
    c.problem1 = {Verdict::no, detail::ineq(("b_" + std::to_string(*first_below)).c_str(),
                                            prefix[*first_below - 1], "<",
                                            ("d_" + std::to_string(*first_below)).c_str(),
                                            c.comparison_d[*first_below - 1])};
  } else if (c.equal_indices.size() > 1) {
    c.problem1 = {Verdict::no, "b_m = d_m at more than one index; the hypothesis allows one"};
  } else if (c.equal_indices.size() == 1 && eligible.empty()) {
    // Equality at m < 3 blocks every admissible choice of m >= 3.
    c.problem1 = {Verdict::no, "b_" + std::to_string(c.equal_indices[0]) + " = d_" +
                                   std::to_string(c.equal_indices[0]) +
                                   " but the hypothesis requires m >= 3 and strict b_n > d_n elsewhere"};
  } else if (eligible.size() == 1) {
    c.problem1 = {Verdict::yes, "b_" + std::to_string(eligible[0]) + " = d_" +
                                    std::to_string(eligible[0]) + " = " +
                                    std::to_string(prefix[eligible[0] - 1]) +
                                    ", b_n > d_n at every other computed index (prefix-limited)"};
    c.problem1_m = eligible[0];
  } else {
    // Strict b_n > d_n throughout: the required equality may still occur
    // beyond the prefix.
    c.problem1 = {Verdict::undetermined, "no equality index within the prefix"};
  }

  return c;
}

}  // namespace subsetsum

// Bounded-horizon exhaustive search: certifies that no finite element set
// inside [1, horizon] can cover every non-excluded value up to the horizon
// while avoiding the excluded ones. Exhaustion is a certificate for every
// extension of the known excluded prefix; a found witness is advisory only.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "subsetsum/errors.hpp"
#include "subsetsum/sumset.hpp"

namespace subsetsum {

struct SearchLimits {
  u64 max_nodes = 10'000'000;
  std::size_t max_depth = 64;
  unsigned threads = 1;
  bool collect_dead_ends = false;
};

struct SearchNode {
  std::vector<u64> prefix;
  SumSet sums;
  std::size_t depth = 0;
};

struct RejectedCandidate {
  u64 value = 0;    // candidate element
  u64 witness = 0;  // excluded value its addition would cover
};

// Result of expanding one node: either the prefix already covers everything
// it must, or the least uncovered obligation bounds the candidates.
struct ExtensionSet {
  bool satisfiable_here = false;
  u64 target = 0;                           // least uncovered obligation
  std::vector<u64> admissible;              // candidates that keep the sums clean
  std::vector<RejectedCandidate> rejected;  // candidates refuted by a witness
};

struct DeadEnd {
  std::vector<u64> prefix;
  u64 unmet = 0;                            // obligation no candidate could reach
  std::vector<RejectedCandidate> rejected;
};

struct SearchOutcome {
  enum class Kind { exhausted, prefix_satisfiable, inconclusive };
  Kind kind = Kind::inconclusive;
  u64 nodes = 0;                     // expansions performed (full tree when exhausted)
  std::size_t max_depth_reached = 0;
  std::vector<u64> witness;          // covering element set (prefix_satisfiable only)
  std::string limit;                 // which budget stopped the run (inconclusive only)
  std::vector<DeadEnd> dead_ends;    // populated when collect_dead_ends is set
};

inline const char* to_string(SearchOutcome::Kind k) {
  switch (k) {
    case SearchOutcome::Kind::exhausted: return "exhausted";
    case SearchOutcome::Kind::prefix_satisfiable: return "prefix_satisfiable";
    default: return "inconclusive";
  }
}

namespace detail {

inline void validate_known_b(std::span<const u64> known_b) {
  if (known_b.empty()) throw InvalidInput("need at least one known excluded value");
  for (std::size_t i = 0; i < known_b.size(); ++i) {
    if (known_b[i] == 0) throw InvalidInput("excluded values must be positive");
    if (i > 0 && known_b[i] <= known_b[i - 1])
      throw InvalidInput("excluded values must be strictly increasing");
  }
}

inline void validate_horizon(std::span<const u64> known_b, u64 horizon) {
  validate_known_b(known_b);
  if (horizon != known_b.back())
    throw InvalidInput("horizon must equal the largest known excluded value (" +
                       std::to_string(known_b.back()) + "); beyond it membership is unknown");
}

// Extension computation on raw parts, shared by the public entry point and
// the search loop (which has already validated its inputs).
inline ExtensionSet extensions_impl(const SumSet& sums, u64 last, std::span<const u64> known_b,
                                    u64 horizon) {
  ExtensionSet ext;
  std::optional<u64> t;
  std::size_t bi = 0;
  for (u64 v = 0; v <= horizon; ++v) {
    const bool in_b = bi < known_b.size() && known_b[bi] == v;
    if (in_b) ++bi;
    if (!in_b && !sums.contains(v)) {
      t = v;
      break;
    }
  }
  if (!t) {
    ext.satisfiable_here = true;
    return ext;
  }
  ext.target = *t;
  for (u64 a = last + 1; a <= *t; ++a) {
    SumSet trial = sums.with_element(a);
    std::optional<u64> witness;
    for (u64 b : known_b) {
      if (b > horizon) break;
      if (trial.contains(b)) {
        witness = b;
        break;
      }
    }
    if (witness)
      ext.rejected.push_back({a, *witness});
    else
      ext.admissible.push_back(a);
  }
  return ext;
}

}  // namespace detail

inline SearchNode make_root(std::span<const u64> known_b, u64 horizon,
                            u64 budget_bits = kDefaultWindowBudgetBits) {
  detail::validate_horizon(known_b, horizon);
  return SearchNode{{}, SumSet::empty(horizon, budget_bits), 0};
}

inline SearchNode make_node(std::vector<u64> prefix, std::span<const u64> known_b, u64 horizon,
                            u64 budget_bits = kDefaultWindowBudgetBits) {
  detail::validate_horizon(known_b, horizon);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i > 0 && prefix[i] <= prefix[i - 1])
      throw InvalidInput("prefix must be strictly increasing");
    if (prefix[i] > horizon) throw InvalidInput("prefix elements must stay within the horizon");
  }
  SumSet sums = subset_sums(prefix, horizon, budget_bits);
  for (u64 b : known_b)
    if (b <= horizon && sums.contains(b))
      throw InvalidInput("prefix sums already cover excluded value " + std::to_string(b));
  const std::size_t depth = prefix.size();
  return SearchNode{std::move(prefix), std::move(sums), depth};
}

// Candidates for the next element: everything in (last element, t] that does
// not put an excluded value into the sums, where t is the least value that
// still must be covered. Elements beyond t can never help represent t, so t
// would stay uncovered forever.
inline ExtensionSet admissible_extensions(const SearchNode& node, std::span<const u64> known_b,
                                          u64 horizon) {
  detail::validate_horizon(known_b, horizon);
  return detail::extensions_impl(node.sums, node.prefix.empty() ? 0 : node.prefix.back(),
                                 known_b, horizon);
}

namespace detail {

struct SubtreeResult {
  SearchOutcome::Kind kind = SearchOutcome::Kind::exhausted;
  std::size_t max_depth_reached = 0;
  std::vector<u64> witness;
  std::string limit;
  std::vector<DeadEnd> dead_ends;
};

// Depth-first exploration of one subtree, candidates ascending. The node
// budget is shared through an atomic counter so parallel subtrees stop
// together; `superseded` lets a subtree stand down once a lexicographically
// earlier subtree holds a witness (its result is then never inspected).
class Searcher {
 public:
  Searcher(std::span<const u64> known_b, u64 horizon, const SearchLimits& limits,
           std::atomic<u64>& nodes)
      : known_b_(known_b), horizon_(horizon), limits_(limits), nodes_(nodes) {}

  SubtreeResult run(std::vector<u64> prefix, SumSet sums,
                    const std::atomic<bool>* superseded = nullptr) {
    SubtreeResult res;
    struct Frame {
      SumSet sums;
      std::vector<u64> cands;
      std::size_t next = 0;
      bool owns_element = false;  // pops prefix.back() when the frame retires
    };
    std::vector<Frame> stack;

    // Expand the node (prefix, s). Returns false when the whole run is over
    // (budget hit or witness found); *descended says whether a frame was
    // pushed (so the caller keeps prefix in sync on dead ends).
    auto visit = [&](SumSet s, bool owns, bool* descended) -> bool {
      *descended = false;
      if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > limits_.max_nodes) {
        res.kind = SearchOutcome::Kind::inconclusive;
        res.limit = "node budget of " + std::to_string(limits_.max_nodes) +
                    " exhausted at depth " + std::to_string(prefix.size());
        return false;
      }
      res.max_depth_reached = std::max(res.max_depth_reached, prefix.size());
      ExtensionSet ext =
          extensions_impl(s, prefix.empty() ? 0 : prefix.back(), known_b_, horizon_);
      if (ext.satisfiable_here) {
        res.kind = SearchOutcome::Kind::prefix_satisfiable;
        res.witness = prefix;
        return false;
      }
      if (ext.admissible.empty()) {
        if (limits_.collect_dead_ends)
          res.dead_ends.push_back({prefix, ext.target, std::move(ext.rejected)});
        return true;  // dead end: siblings continue
      }
      if (prefix.size() >= limits_.max_depth) {
        res.kind = SearchOutcome::Kind::inconclusive;
        res.limit = "depth budget of " + std::to_string(limits_.max_depth) + " reached";
        return false;
      }
      stack.push_back({std::move(s), std::move(ext.admissible), 0, owns});
      *descended = true;
      return true;
    };

    bool descended = false;
    if (!visit(std::move(sums), /*owns=*/false, &descended)) return res;
    while (!stack.empty()) {
      if (superseded && superseded->load(std::memory_order_relaxed)) {
        res.kind = SearchOutcome::Kind::inconclusive;
        res.limit = "superseded";
        return res;
      }
      {
        Frame& f = stack.back();
        if (f.next == f.cands.size()) {
          if (f.owns_element) prefix.pop_back();
          stack.pop_back();
          continue;
        }
        prefix.push_back(f.cands[f.next++]);
      }
      // stack may reallocate inside visit; the frame reference is dead now.
      SumSet child = stack.back().sums.with_element(prefix.back());
      if (!visit(std::move(child), /*owns=*/true, &descended)) return res;
      if (!descended) prefix.pop_back();
    }
    return res;  // every branch retired: exhausted
  }

 private:
  std::span<const u64> known_b_;
  u64 horizon_;
  const SearchLimits& limits_;
  std::atomic<u64>& nodes_;
};

}  // namespace detail

// Exhaustive certificate driver. "exhausted" means: no finite subset of
// [1, horizon] covers all of [0, horizon] minus the excluded values while
// avoiding every excluded value — so no sequence whose excluded set extends
// known_b can exist, whatever its later terms are. A witness only shows the
// finite obligations are coverable; it proves nothing about infinite
// sequences.
inline SearchOutcome nonexistence_search(std::span<const u64> known_b, u64 horizon,
                                         const SearchLimits& limits = {},
                                         u64 budget_bits = kDefaultWindowBudgetBits) {
  detail::validate_horizon(known_b, horizon);
  std::atomic<u64> nodes{0};
  detail::Searcher searcher(known_b, horizon, limits, nodes);

  auto finish = [&](detail::SubtreeResult&& r) {
    SearchOutcome out;
    out.kind = r.kind;
    out.nodes = nodes.load(std::memory_order_relaxed);
    out.max_depth_reached = r.max_depth_reached;
    out.witness = std::move(r.witness);
    out.limit = std::move(r.limit);
    out.dead_ends = std::move(r.dead_ends);
    return out;
  };

  // Dead-end dumps follow depth-first discovery order, so they are produced
  // on the single-threaded path regardless of the thread setting.
  if (limits.threads <= 1 || limits.collect_dead_ends)
    return finish(searcher.run({}, SumSet::empty(horizon, budget_bits)));

  // Parallel mode: widen a breadth-first frontier, then hand each frontier
  // node to a worker for the usual depth-first run. Merging inspects slots in
  // ascending (depth-first) order, which keeps the outcome kind — and the
  // witness, when one is reported — independent of the schedule.
  struct Pending {
    std::vector<u64> prefix;
    SumSet sums;
  };
  std::vector<Pending> layer;
  layer.push_back({{}, SumSet::empty(horizon, budget_bits)});
  const std::size_t want =
      std::min<std::size_t>(4096, std::max<std::size_t>(std::size_t{limits.threads} * 8, 64));
  std::size_t layer_max_depth = 0;
  while (layer.size() < want) {
    std::vector<Pending> next_layer;
    for (Pending& p : layer) {
      if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > limits.max_nodes) {
        detail::SubtreeResult r;
        r.kind = SearchOutcome::Kind::inconclusive;
        r.limit = "node budget of " + std::to_string(limits.max_nodes) +
                  " exhausted while widening the frontier";
        r.max_depth_reached = layer_max_depth;
        return finish(std::move(r));
      }
      layer_max_depth = std::max(layer_max_depth, p.prefix.size());
      ExtensionSet ext = detail::extensions_impl(
          p.sums, p.prefix.empty() ? 0 : p.prefix.back(), known_b, horizon);
      if (ext.satisfiable_here) {
        detail::SubtreeResult r;
        r.kind = SearchOutcome::Kind::prefix_satisfiable;
        r.witness = p.prefix;
        r.max_depth_reached = layer_max_depth;
        return finish(std::move(r));
      }
      if (ext.admissible.empty()) continue;  // dead end
      if (p.prefix.size() >= limits.max_depth) {
        detail::SubtreeResult r;
        r.kind = SearchOutcome::Kind::inconclusive;
        r.limit = "depth budget of " + std::to_string(limits.max_depth) + " reached";
        r.max_depth_reached = layer_max_depth;
        return finish(std::move(r));
      }
      for (u64 a : ext.admissible) {
        std::vector<u64> child_prefix = p.prefix;
        child_prefix.push_back(a);
        next_layer.push_back({std::move(child_prefix), p.sums.with_element(a)});
      }
    }
    if (next_layer.empty()) {  // the whole tree died during widening
      detail::SubtreeResult r;
      r.max_depth_reached = layer_max_depth;
      return finish(std::move(r));
    }
    layer = std::move(next_layer);
  }

  const std::size_t n = layer.size();
  std::vector<detail::SubtreeResult> results(n);
  std::unique_ptr<std::atomic<bool>[]> stand_down(new std::atomic<bool>[n]);
  for (std::size_t i = 0; i < n; ++i) stand_down[i].store(false, std::memory_order_relaxed);
  std::atomic<std::size_t> next_slot{0};
  std::atomic<std::size_t> best_witness_slot{n};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next_slot.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      if (stand_down[i].load(std::memory_order_relaxed)) {
        results[i].kind = SearchOutcome::Kind::inconclusive;
        results[i].limit = "superseded";
        continue;
      }
      results[i] = searcher.run(layer[i].prefix, layer[i].sums, &stand_down[i]);
      if (results[i].kind == SearchOutcome::Kind::prefix_satisfiable) {
        std::size_t cur = best_witness_slot.load(std::memory_order_relaxed);
        while (i < cur &&
               !best_witness_slot.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
        }
        const std::size_t best = best_witness_slot.load(std::memory_order_relaxed);
        for (std::size_t j = best + 1; j < n; ++j)
          stand_down[j].store(true, std::memory_order_relaxed);
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = std::min(limits.threads, hw * 2);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  // First non-exhausted slot in depth-first order decides. Superseded slots
  // sit strictly after a witness slot, so they are never reached.
  SearchOutcome out;
  out.kind = SearchOutcome::Kind::exhausted;
  out.nodes = nodes.load(std::memory_order_relaxed);
  out.max_depth_reached = layer_max_depth;
  for (std::size_t i = 0; i < n; ++i) {
    out.max_depth_reached = std::max(out.max_depth_reached, results[i].max_depth_reached);
    if (results[i].kind != SearchOutcome::Kind::exhausted) {
      out.kind = results[i].kind;
      out.witness = std::move(results[i].witness);
      out.limit = std::move(results[i].limit);
      return out;
    }
  }
  return out;
}

}  // namespace subsetsum

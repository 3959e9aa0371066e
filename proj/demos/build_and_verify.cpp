// Build both construction families for small parameters, print every stage,
// and verify each stage's sum set against its expected hole pattern.
#include <cstdio>

#include "subsetsum/subsetsum.hpp"

using namespace subsetsum;

static void show(const ConstructionTrace& trace) {
  const TraceReport report = verify_trace(trace);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const Stage& s = trace.steps[i];
    std::printf("stage %zu: %zu elements, span %llu, added {", s.k, s.cumulative.size(),
                static_cast<unsigned long long>(s.expected.span));
    for (std::size_t j = 0; j < s.added.size(); ++j)
      std::printf("%s%llu", j ? ", " : "", static_cast<unsigned long long>(s.added[j]));
    std::printf("} -> %s\n", to_string(report.stages[i].status));
  }
  std::printf(report.all_verified ? "all stages verified\n" : "VERIFICATION FAILED\n");
}

int main() {
  std::printf("recurrence family, first term 11, stages 3..6\n");
  show(build_a_thm11(11, 6));

  std::printf("\nprogression family, first term 4, difference 6, stages 2..6\n");
  show(build_a_thm13(4, 6, 6));

  std::printf("\ncomplement of the stage-5 element set over its full window\n");
  const ConstructionTrace t = build_a_thm11(11, 5);
  const Stage& last = t.steps.back();
  const ComplementReport c =
      verify_complement(last.cumulative, BSpec::recurrence(11), last.expected.span);
  std::printf("window [0, %llu]: %s, %zu holes pending for later stages\n",
              static_cast<unsigned long long>(c.window), c.equal ? "equal" : "NOT equal",
              c.pending.size());
  return 0;
}

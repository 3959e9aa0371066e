// Bounded-horizon search demo: one impossible excluded pair gets an
// exhaustion certificate with its dead ends; a loose pair gets a witness.
#include <cstdio>

#include "subsetsum/subsetsum.hpp"

using namespace subsetsum;

static void print_list(const std::vector<u64>& v) {
  std::printf("{");
  for (std::size_t i = 0; i < v.size(); ++i)
    std::printf("%s%llu", i ? ", " : "", static_cast<unsigned long long>(v[i]));
  std::printf("}");
}

int main() {
  const std::vector<u64> impossible{4, 14};
  SearchLimits limits;
  limits.collect_dead_ends = true;
  const SearchOutcome certificate = nonexistence_search(impossible, 14, limits);
  std::printf("excluded {4, 14}: %s after %llu nodes\n", to_string(certificate.kind),
              static_cast<unsigned long long>(certificate.nodes));
  for (const DeadEnd& d : certificate.dead_ends) {
    std::printf("  dead end at ");
    print_list(d.prefix);
    std::printf(": %llu is unreachable; ", static_cast<unsigned long long>(d.unmet));
    std::printf("every candidate covers an excluded value (");
    for (std::size_t i = 0; i < d.rejected.size(); ++i)
      std::printf("%s%llu->%llu", i ? ", " : "", static_cast<unsigned long long>(d.rejected[i].value),
                  static_cast<unsigned long long>(d.rejected[i].witness));
    std::printf(")\n");
  }

  const std::vector<u64> loose{11, 38};
  const SearchOutcome witness = nonexistence_search(loose, 38);
  std::printf("excluded {11, 38}: %s, witness ", to_string(witness.kind));
  print_list(witness.witness);
  std::printf("\nthe witness settles the finite window only, not a whole sequence\n");
  return 0;
}

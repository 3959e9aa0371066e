// Arbitrary-precision generation of the excluded sequences, for listing
// terms past 64 bits. Generation only: nothing downstream verifies these.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "subsetsum/errors.hpp"
#include "subsetsum/sequences.hpp"

namespace subsetsum {

inline std::vector<std::string> gen_b_thm11_big(u64 b1, std::size_t n) {
  if (b1 < 11) throw InvalidInput("recurrence family requires b1 >= 11");
  if (n < 1) throw InvalidInput("sequence length must be >= 1");
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> b{cpp_int(b1)};
  if (n >= 2) b.push_back(3 * b[0] + 5);
  if (n >= 3) b.push_back(3 * b[1] + 2);
  while (b.size() < n) b.push_back(3 * b[b.size() - 1] + 4 * b[b.size() - 2]);
  std::vector<std::string> out;
  out.reserve(n);
  for (const cpp_int& v : b) out.push_back(v.str());
  return out;
}

inline std::vector<std::string> gen_b_ap_big(u64 b1, u64 d, std::size_t n) {
  BSpec spec = BSpec::progression(b1, d);  // validates b1 and d
  if (n < 1) throw InvalidInput("sequence length must be >= 1");
  using boost::multiprecision::cpp_int;
  std::vector<std::string> out;
  out.reserve(n);
  cpp_int v(spec.b1);
  for (std::size_t i = 0; i < n; ++i, v += spec.d) out.push_back(v.str());
  return out;
}

}  // namespace subsetsum

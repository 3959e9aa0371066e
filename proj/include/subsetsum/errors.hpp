// Error taxonomy and checked 64-bit arithmetic shared by every module.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subsetsum {

using u64 = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition or parameter constraint was violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A value left the unsigned 64-bit range.
class Overflow : public Error {
 public:
  using Error::Error;
};

// A window or node budget would be exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// No base set with full-interval subset sums exists for this b1.
class NoBaseConstruction : public Error {
 public:
  using Error::Error;
};

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw Overflow("64-bit overflow: " + std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow("64-bit overflow: " + std::to_string(a) + " * " + std::to_string(b));
  return r;
}

// Subtraction guard; the construction formulas never go negative, so a hit
// here means corrupt input rather than a real arithmetic limit.
inline u64 checked_sub(u64 a, u64 b) {
  if (b > a)
    throw Overflow("64-bit underflow: " + std::to_string(a) + " - " + std::to_string(b));
  return a - b;
}

// 2^k, guarded.
inline u64 checked_pow2(u64 k) {
  if (k >= 64) throw Overflow("64-bit overflow: 2^" + std::to_string(k));
  return u64{1} << k;
}

}  // namespace subsetsum

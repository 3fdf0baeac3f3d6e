#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padic {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when a computation would exceed a configured size or memory budget.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : m - (b - a); }

/// True when base^exp < 2^63 (the limit we keep for radix indices).
inline bool pow_fits(u64 base, unsigned exp) {
  u128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc >= (static_cast<u128>(1) << 63)) return false;
  }
  return true;
}

inline u64 ipow(u64 base, unsigned exp) {
  if (!pow_fits(base, exp))
    throw SizeError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds 63-bit index range");
  u64 acc = 1;
  for (unsigned i = 0; i < exp; ++i) acc *= base;
  return acc;
}

/// Inverse of a modulo m by the extended Euclidean algorithm.
inline u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  __int128 r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("inverse_mod: argument not invertible");
  if (t0 < 0) t0 += m;
  return static_cast<u64>(t0);
}

/// p-adic valuation of a nonzero machine integer.
inline unsigned vp(u64 x, u64 p) {
  unsigned v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline bool is_small_prime(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace padic

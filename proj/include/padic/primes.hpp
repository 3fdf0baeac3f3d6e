#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "padic/core.hpp"

namespace padic {

/// The standing assumption M >= 2 when p = 2 is violated.
class StandingAssumptionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Primes in [lo, hi) by a segmented sieve of Eratosthenes.
std::vector<u64> primes_in(u64 lo, u64 hi);

/// Largest p^M for which Q_M is enumerated (and counted) exactly.
constexpr u64 kPrimeSieveLimit = u64{1} << 28;

/// Q_M = primes q with p^M / 2 <= q < p^M, gcd(q, p) = 1, sorted.
/// Throws StandingAssumptionError for p = 2, M < 2, SizeError past the sieve
/// limit, and std::runtime_error if the range holds no prime.
std::vector<u64> enumerate_QM(unsigned p, unsigned M);

/// |Q_M|: exact when p^M <= kPrimeSieveLimit, otherwise a certified interval
/// from Dusart's bounds x/ln x (1 + 1/ln x) <= pi(x) <= x/ln x (1 + 1/ln x + 2.51/ln^2 x).
struct PrimeCount {
  bool exact = false;
  BigInt lo, hi;

  std::string to_string() const;
};

PrimeCount count_QM(unsigned p, unsigned M);

/// ceil(p^M / 2), the smallest admissible q.
BigInt qm_lower(unsigned p, unsigned M);

}  // namespace padic

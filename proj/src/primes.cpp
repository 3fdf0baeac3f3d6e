#include "padic/primes.hpp"

#include <cmath>

namespace padic {

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi <= 2 || lo >= hi) return out;
  lo = std::max<u64>(lo, 2);
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  while (root * root >= hi && root > 0) --root;
  while ((root + 1) * (root + 1) < hi) ++root;
  // base primes up to sqrt(hi - 1)
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }
  constexpr u64 kSegment = u64{1} << 20;
  std::vector<char> seg;
  for (u64 start = lo; start < hi; start += kSegment) {
    const u64 end = std::min(hi, start + kSegment);
    seg.assign(end - start, 1);
    for (u64 b : base) {
      if (b * b >= end) break;
      u64 first = std::max(b * b, (start + b - 1) / b * b);
      for (u64 j = first; j < end; j += b) seg[j - start] = 0;
    }
    for (u64 i = start; i < end; ++i)
      if (seg[i - start]) out.push_back(i);
  }
  return out;
}

BigInt qm_lower(unsigned p, unsigned M) {
  BigInt top = big_pow(p, M);
  return (top + 1) / 2;
}

namespace {

void check_standing(unsigned p, unsigned M) {
  require_prime(p);
  if (M == 0) throw std::invalid_argument("Q_M requires M >= 1");
  if (p == 2 && M < 2) throw StandingAssumptionError("standing assumption violated: M >= 2 is required when p = 2");
}

}  // namespace

std::vector<u64> enumerate_QM(unsigned p, unsigned M) {
  check_standing(p, M);
  if (!pow_fits(p, M) || ipow(p, M) > kPrimeSieveLimit)
    throw SizeError("Q_M enumeration: p^M = " + std::to_string(p) + "^" + std::to_string(M) +
                    " is beyond the sieve limit");
  const u64 top = ipow(p, M);
  std::vector<u64> q = primes_in(qm_lower(p, M).get_ui(), top);
  std::erase_if(q, [p](u64 x) { return x % p == 0; });
  if (q.empty())
    throw std::runtime_error("Q_M is empty for p = " + std::to_string(p) + ", M = " + std::to_string(M));
  return q;
}

std::string PrimeCount::to_string() const {
  if (exact) return lo.get_str();
  return "[" + lo.get_str() + ", " + hi.get_str() + "]";
}

namespace {

// Dusart (1999) bounds on pi(x), evaluated in long double and widened by a
// relative 1e-12 to absorb rounding.
long double pi_lower(long double x) {
  long double lx = std::log(x);
  return x / lx * (1.0L + 1.0L / lx) * (1.0L - 1e-12L);
}

long double pi_upper(long double x) {
  long double lx = std::log(x);
  return x / lx * (1.0L + 1.0L / lx + 2.51L / (lx * lx)) * (1.0L + 1e-12L);
}

BigInt to_big(long double v, bool up) {
  v = up ? std::ceil(v) : std::floor(v);
  if (v < 0) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0Lf", v);
  return BigInt(buf);
}

}  // namespace

PrimeCount count_QM(unsigned p, unsigned M) {
  check_standing(p, M);
  PrimeCount c;
  if (pow_fits(p, M) && ipow(p, M) <= kPrimeSieveLimit) {
    c.exact = true;
    c.lo = c.hi = BigInt(std::to_string(enumerate_QM(p, M).size()));
    return c;
  }
  // Q_M counts primes in [x/2, x) with x = p^M > 2^28, well past Dusart's
  // validity thresholds 599 and 355991; p itself lies below x/2.
  const long double x = std::pow(static_cast<long double>(p), static_cast<long double>(M));
  const long double half = std::ceil(x / 2) - 1;  // pi(ceil(x/2) - 1) counts primes < x/2
  c.exact = false;
  c.lo = to_big(pi_lower(x - 1) - pi_upper(half), false);
  c.hi = to_big(pi_upper(x - 1) - pi_lower(half), true);
  return c;
}

}  // namespace padic

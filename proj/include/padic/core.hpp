#pragma once

// Exact rational representatives of p-adic numbers: valuation, absolute
// value, fractional/integral parts and exact character phases.

#include <compare>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic/modular.hpp"

namespace padic {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// v_p(x), with +infinity for x = 0.
class Valuation {
 public:
  explicit Valuation(long v) : value_(v), infinite_(false) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  Valuation() : value_(0), infinite_(true) {}
  long value_;
  bool infinite_;
};

/// Exact root of unity e(index / p^level), kept in lowest terms.
class UnitRootPhase {
 public:
  explicit UnitRootPhase(unsigned p);
  UnitRootPhase(unsigned p, BigInt index, unsigned level);

  unsigned prime() const { return p_; }
  const BigInt& index() const { return index_; }
  unsigned level() const { return level_; }
  bool is_identity() const { return level_ == 0; }

  /// index / p^level in [0, 1).
  BigRational fraction() const;
  std::complex<double> to_complex() const;

  UnitRootPhase operator*(const UnitRootPhase& other) const;
  UnitRootPhase inverse() const;
  friend bool operator==(const UnitRootPhase&, const UnitRootPhase&) = default;

 private:
  void canonicalize();
  unsigned p_;
  BigInt index_;
  unsigned level_;
};

class PadicRational {
 public:
  PadicRational(unsigned p, BigRational value);
  PadicRational(unsigned p, long num, long den = 1);

  unsigned prime() const { return p_; }
  const BigRational& value() const { return value_; }
  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  const Valuation& valuation() const { return valuation_; }
  /// |x|_p = p^{-v_p(x)}, exactly; 0 for x = 0.
  BigRational abs_p() const;
  bool is_zero() const { return valuation_.is_infinite(); }
  /// |x|_p <= 1.
  bool is_integral() const;

  PadicRational operator+(const PadicRational& o) const;
  PadicRational operator-(const PadicRational& o) const;
  PadicRational operator*(const PadicRational& o) const;
  PadicRational operator/(const PadicRational& o) const;
  PadicRational operator-() const { return {p_, -value_}; }
  friend bool operator==(const PadicRational& a, const PadicRational& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  void check_same_prime(const PadicRational& o) const;
  unsigned p_;
  BigRational value_;
  Valuation valuation_;
};

std::ostream& operator<<(std::ostream& os, const PadicRational& x);

/// Throws std::invalid_argument unless p is prime.
void require_prime(unsigned p);

/// v_p of a nonzero big integer.
unsigned valuation_of(const BigInt& n, unsigned p);

BigInt big_pow(unsigned p, unsigned exp);

inline Valuation valuation(const PadicRational& x) { return x.valuation(); }

/// {x}_p: a/p^l in [0,1) with x - {x}_p in Z_p.
PadicRational frac_part(const PadicRational& x);
/// [x]_p's rational representative x - {x}_p.
PadicRational int_part(const PadicRational& x);
/// Exact phase of e({x}_p).
UnitRootPhase char_phase(const PadicRational& x);

/// Residue of an element of Z_p (rational, denominator prime to p) modulo p^level.
BigInt residue_mod(const PadicRational& x, unsigned level);

/// e(index / order) = exp(2 pi i index / order); the index is reduced exactly first.
std::complex<double> unit_root(u64 index, u64 order);

}  // namespace padic

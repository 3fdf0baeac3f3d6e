#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "padic/core.hpp"

namespace padic {

/// An exact element sum_k c_k * zeta^k of the cyclotomic field Q(zeta),
/// zeta = e(1/p^level), with rational coefficients.
///
/// Terms are stored sparsely by exponent. canonical() rewrites the sum in the
/// power basis {zeta^k : k < (p-1) p^(level-1)} using the relations
/// sum_{i<p} zeta^(j + i p^(level-1)) = 0, so two sums are equal exactly when
/// their canonical forms (at a common level) coincide.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(unsigned p, unsigned level = 0);
  static CyclotomicSum rational(unsigned p, const BigRational& value);

  unsigned prime() const { return p_; }
  unsigned level() const { return level_; }
  u64 order() const { return order_; }
  const std::map<u64, BigRational>& terms() const { return terms_; }

  void add_term(u64 exponent, const BigRational& coeff);
  void add_phase(const UnitRootPhase& phase, const BigRational& coeff);

  CyclotomicSum& operator+=(const CyclotomicSum& other);
  CyclotomicSum& operator-=(const CyclotomicSum& other);
  CyclotomicSum& operator*=(const BigRational& scale);
  CyclotomicSum operator*(const CyclotomicSum& other) const;

  /// Same element expressed with zeta' = e(1/p^level); level must not shrink.
  CyclotomicSum lifted(unsigned level) const;
  CyclotomicSum canonical() const;

  bool is_zero() const;
  /// The rational value if this element lies in Q.
  std::optional<BigRational> as_rational() const;
  std::complex<double> to_complex() const;

  friend bool operator==(const CyclotomicSum& a, const CyclotomicSum& b);

  std::string to_string() const;

 private:
  unsigned p_;
  unsigned level_;
  u64 order_;
  std::map<u64, BigRational> terms_;
};

}  // namespace padic

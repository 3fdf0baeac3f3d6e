#pragma once

// Growth functions g: nonnegative, nondecreasing, unbounded.

#include <string>

#include "padic/core.hpp"

namespace padic {

class Growth {
 public:
  enum class Kind { power, log, logroot };

  /// g(t) = t^gamma.
  static Growth power(const BigRational& gamma);
  /// g(t) = ln(1 + t).
  static Growth log();
  /// g(t) = ln(1 + t)^(1/j).
  static Growth logroot(unsigned j);
  /// "sqrt", "power", "power:a/b", "log", "logroot:j".
  static Growth parse(const std::string& spec);

  Kind kind() const { return kind_; }
  const BigRational& gamma() const { return gamma_; }
  unsigned root() const { return root_; }
  /// Canonical spec string; parse(name()) reproduces *this.
  std::string name() const;

  double operator()(double t) const;
  /// ln g(p^M) without forming p^M.
  long double ln_at_power(unsigned p, unsigned M) const;
  /// lhs < g(p^M); exact for power growth, log-domain otherwise.
  bool exceeds(const BigRational& lhs, unsigned p, unsigned M) const;

  friend bool operator==(const Growth& a, const Growth& b) {
    return a.kind_ == b.kind_ && a.gamma_ == b.gamma_ && a.root_ == b.root_;
  }

 private:
  Kind kind_ = Kind::power;
  BigRational gamma_ = BigRational(1, 2);
  unsigned root_ = 1;
};

/// Natural log of a positive big rational.
long double big_log(const BigRational& x);

}  // namespace padic

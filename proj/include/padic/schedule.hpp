#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/growth.hpp"
#include "padic/primes.hpp"

namespace padic {

/// Scalar (d = 1) or m x n matrix (d = mn) construction.
struct Shape {
  bool matrix = false;
  unsigned m = 1, n = 1;

  static Shape scalar() { return {}; }
  static Shape mxn(unsigned m, unsigned n) { return {true, m, n}; }
  unsigned dim() const { return m * n; }
  std::string name() const;
  friend bool operator==(const Shape&, const Shape&) = default;
};

enum class Mode { faithful, toy };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct ConstructionParams {
  unsigned p = 3;
  BigRational tau = BigRational(5, 2);
  Shape shape;
  Growth g = Growth::power(BigRational(1, 2));
  unsigned depth = 2;
  Mode mode = Mode::faithful;
  /// M_1..M_K in toy mode.
  std::vector<unsigned> m_list;
  /// Explicit M_0; default 1, or 2 when p = 2.
  std::optional<unsigned> M0;

  unsigned dim() const { return shape.dim(); }
  unsigned default_M0() const { return p == 2 ? 2 : 1; }
  unsigned resolved_M0() const { return M0.value_or(default_M0()); }
  /// Throws std::invalid_argument / StandingAssumptionError.
  void validate() const;
};

/// ceil(tau M), exactly.
unsigned ceil_tau(const BigRational& tau, unsigned M);

struct ScheduleCheck {
  unsigned k;
  std::string condition;
  bool holds;
  std::string detail;
};

struct LevelSchedule {
  unsigned p;
  BigRational tau;
  Shape shape;
  Mode mode;
  /// M_0..M_K and L_k = ceil(tau M_k).
  std::vector<unsigned> M, L;
  /// |Q_{M_k}| for k = 0..K (index 0 left empty when M_0 = 0).
  std::vector<PrimeCount> q_count;
  std::vector<ScheduleCheck> checks;

  unsigned depth() const { return static_cast<unsigned>(M.size()) - 1; }
  bool all_conditions_hold() const;
};

/// Largest M_k the faithful search will consider.
constexpr unsigned kMaxScheduleM = 1u << 20;

/// Faithful mode: greedy minimal M_k satisfying every applicable condition.
/// Toy mode: the supplied list, with every condition evaluated and reported.
/// Throws SizeError naming the feasible depth if M_k would exceed max_M.
LevelSchedule choose_Mk(const ConstructionParams& params, unsigned max_M = kMaxScheduleM);

}  // namespace padic

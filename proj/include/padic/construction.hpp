#pragma once

// psi_0, F_M and their transforms, scalar and m x n matrix.

#include <complex>
#include <span>
#include <vector>

#include "padic/cyclotomic.hpp"
#include "padic/fourier.hpp"
#include "padic/schedule.hpp"
#include "padic/stepfn.hpp"

namespace padic {

/// Scalar: (p^-1 - p^-2)^-1 (1_{B(0,1/p)} - 1_{B(0,1/p^2)}) at level 2.
/// Matrix: the indicator of Z_p^{mn}. Throws if ceil(tau M_1) < 2.
StepDensity build_psi0(const ConstructionParams& params, const LevelSchedule& schedule);

/// psi_0^ by the ball-indicator closed form applied to its terms.
CyclotomicSum ft_psi0_closed(const ConstructionParams& params, const DualPoint& s);

/// Cells-per-(q, r) budget for building F_M densities.
constexpr u64 kDefaultCellBudget = 20'000'000;

/// Q_M, R_M = [0, p^M) and L = ceil(tau M) for one level, shared by the density
/// builder and the closed-form transforms.
class FMData {
 public:
  FMData(const ConstructionParams& params, unsigned M);

  unsigned prime() const { return p_; }
  unsigned M() const { return M_; }
  unsigned L() const { return L_; }
  const Shape& shape() const { return shape_; }
  unsigned dim() const { return shape_.dim(); }
  const std::vector<u64>& Q() const { return Q_; }
  u64 R() const { return R_; }
  /// q^{-1} mod p^L, parallel to Q().
  const std::vector<u64>& Q_inverse() const { return Qinv_; }
  /// |Q|^n |R|^m.
  BigInt pair_count() const;
  /// Density contributed by one phi_{q,r} on each of its cells: p^{mL} / (|Q|^n |R|^m).
  BigRational phi_share() const;
  /// Number of (cell, pair) placements build() performs.
  BigInt placement_count() const;

  /// The step density F_M at level L. Throws SizeError past cell_budget placements.
  StepDensity build(u64 cell_budget = kDefaultCellBudget) const;

  /// Closed-form F_M^(s): O(|Q|) scalar, O(n |Q|^2) matrix.
  std::complex<double> ft(const DualPoint& s) const;
  /// Same, at s = a / p^level (a need not be reduced).
  std::complex<double> ft_at(std::vector<u64> a, unsigned level) const;
  /// Exact closed form; each geometric sum is expanded into its p^M terms.
  CyclotomicSum ft_exact(const DualPoint& s) const;

  /// sum_{0 <= r < p^M} e(r w / p^l) in double precision.
  std::complex<double> geometric_sum(u64 w, unsigned l) const;

 private:
  unsigned p_, M_, L_;
  Shape shape_;
  std::vector<u64> Q_, Qinv_;
  u64 R_;
};

inline StepDensity build_FM(const ConstructionParams& params, unsigned M) { return FMData(params, M).build(); }
inline std::complex<double> ft_FM_closed(const ConstructionParams& params, unsigned M, const DualPoint& s) {
  return FMData(params, M).ft(s);
}

/// q in D(s): {s_ij / q_j}_p equal across j for every row i. Congruence test
/// a_ij q_j' = a_ij' q_j (mod p^l) on the numerators at the common level l.
bool membership_D(const DualPoint& s, std::span<const u64> q, unsigned m, unsigned n);
/// The same predicate evaluated literally with frac_part.
bool membership_D_direct(const DualPoint& s, std::span<const u64> q, unsigned m, unsigned n);

inline StepDensity build_FM_mn(const ConstructionParams& params, unsigned M) { return FMData(params, M).build(); }
inline std::complex<double> ft_FM_mn_closed(const ConstructionParams& params, unsigned M, const DualPoint& s) {
  return FMData(params, M).ft(s);
}

}  // namespace padic

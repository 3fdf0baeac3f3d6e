#pragma once

// Fourier transforms of step densities on Z_p^d against the characters
// x -> e({x . s}_p), s in (Q_p/Z_p)^d.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/stepfn.hpp"

namespace padic {

/// Element of (Q_p/Z_p)^d, each coordinate reduced to a/p^l in [0, 1).
class DualPoint {
 public:
  /// Coordinates may be any rationals; they are reduced modulo Z_p.
  DualPoint(unsigned p, std::vector<PadicRational> coords);
  static DualPoint zero(unsigned p, unsigned dim);
  /// s_i = a_i / p^level.
  static DualPoint from_numerators(unsigned p, std::span<const u64> a, unsigned level);

  unsigned prime() const { return p_; }
  unsigned dim() const { return static_cast<unsigned>(coords_.size()); }
  const std::vector<PadicRational>& coords() const { return coords_; }
  /// |s|_p = p^level(); 0 for s = 0.
  unsigned level() const { return level_; }
  BigRational abs_p() const;
  bool is_zero() const;

  /// a_i with s_i = a_i / p^at (at >= level()).
  std::vector<u64> numerators(unsigned at) const;

  DualPoint operator+(const DualPoint& o) const;
  DualPoint operator-(const DualPoint& o) const;
  DualPoint operator-() const;
  friend bool operator==(const DualPoint& a, const DualPoint& b) { return a.coords_ == b.coords_; }

  /// "(a/p^l, ...)" with each coordinate in lowest terms.
  std::string to_string() const;
  /// Coordinate i as "a/p^l".
  std::string coord_string(unsigned i) const;

 private:
  unsigned p_;
  std::vector<PadicRational> coords_;
  unsigned level_ = 0;
};

/// scale * e(phase), exact; scale 0 means the value 0.
struct ScaledPhase {
  BigRational scale;
  UnitRootPhase phase;

  bool is_zero() const { return scale == 0; }
  std::complex<double> to_complex() const { return scale.get_d() * phase.to_complex(); }
};

/// Transform of the indicator of B(a, p^-k): p^{-dk} e({s.a}_p) if |s|_p <= p^k, else 0.
ScaledPhase ft_ball_indicator(std::span<const PadicRational> a, long k, const DualPoint& s);

constexpr u64 kDefaultBucketThreshold = 1'000'000;

/// f^(s) in double precision. Phases are bucketed by exact index while
/// p^level(s) <= bucket_threshold, otherwise summed with compensation.
std::complex<double> ft_point(const StepDensity& f, const DualPoint& s,
                              u64 bucket_threshold = kDefaultBucketThreshold);

/// f^(s) as an exact element of Q(zeta_{p^l}).
CyclotomicSum ft_point_exact(const StepDensity& f, const DualPoint& s);

/// f^(s) for an arbitrary rational representative s (no reduction mod Z_p);
/// every cell phase goes through frac_part. Used for periodicity checks.
CyclotomicSum ft_point_exact(const StepDensity& f, std::span<const PadicRational> s);

/// Independent oracle: Riemann sum of e({x.s}_p) f(x) over the cells of level
/// max(L, level(s)), each phase from frac_part and std::polar.
std::complex<double> brute_ft_oracle(const StepDensity& f, const DualPoint& s, u64 cap = 50'000'000);

/// Dense table of f^ on {|s|_p <= p^L}, indexed like the cells of the layout:
/// key k <-> s = (a_1, ..., a_d) / p^L.
class FourierTable {
 public:
  FourierTable(unsigned p, unsigned dim, unsigned level, std::vector<std::complex<double>> values);

  unsigned prime() const { return layout_.prime(); }
  unsigned dim() const { return layout_.dim(); }
  unsigned level() const { return layout_.level(); }
  const CellLayout& layout() const { return layout_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::complex<double>>& values() const { return values_; }

  std::complex<double> at(u64 key) const { return values_.at(key); }
  /// Throws ResolutionError if |s|_p > p^L.
  std::complex<double> at(const DualPoint& s) const;
  DualPoint dual_point(u64 key) const;

  /// Columns: s_1..s_d as "a/p^l", re, im, abs, |s|_p; rows in lexicographic
  /// order of (a_1, ..., a_d).
  void write_csv(std::ostream& os) const;

 private:
  CellLayout layout_;
  std::vector<std::complex<double>> values_;
};

constexpr u64 kDefaultTableBudget = u64{1} << 24;

/// Full table by axis-separable radix-p decimation. Throws SizeError when
/// p^{dL} exceeds the budget.
FourierTable ft_table(const StepDensity& f, u64 budget = kDefaultTableBudget);

/// Dense cell values of f (as doubles) recovered from its table; no scaling.
std::vector<std::complex<double>> inverse_ft_table(const FourierTable& table);

/// In-place d-dimensional DFT over the cells of a layout,
/// x_u <- sum_t x_t e(sign * (t . u) / p^L).
void dft_cells(std::vector<std::complex<double>>& data, const CellLayout& layout, int sign);

/// In-place length-p^L DFT, x_u <- sum_t x_t e(sign * t u / p^L).
void radix_p_dft(std::vector<std::complex<double>>& x, unsigned p, unsigned L, int sign);

}  // namespace padic

#pragma once

// Functions and measures on Z_p^d that are constant on the cells (balls of
// radius p^-L) of a fixed level L.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padic/core.hpp"

namespace padic {

/// A requested ball is finer than the resolution of a step measure.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flattened radix indexing of the p^(dL) cells of level L in Z_p^d.
///
/// A cell is the ball c + p^L Z_p^d with c in [0, p^L)^d. Its key is
/// sum_i c_i * (p^L)^i. The level-l ancestor of c (l <= L) is c mod p^l.
class CellLayout {
 public:
  CellLayout(unsigned p, unsigned dim, unsigned level);

  unsigned prime() const { return p_; }
  unsigned dim() const { return dim_; }
  unsigned level() const { return level_; }
  u64 side() const { return side_; }
  u64 cell_count() const { return count_; }

  u64 key(std::span<const u64> coords) const;
  std::vector<u64> coords(u64 key) const;
  u64 coord(u64 key, unsigned axis) const;
  /// Key of the level-`coarse` ancestor, in the layout of that level.
  u64 ancestor(u64 key, unsigned coarse) const;

 private:
  unsigned p_, dim_, level_;
  u64 side_, count_;
};

struct CellIndex {
  unsigned p;
  unsigned level;
  std::vector<u64> coords;

  /// Canonical rational representative (the integer corner) of the cell.
  std::vector<PadicRational> center() const;
};

class StepDensity {
 public:
  using Cell = std::pair<u64, BigRational>;

  StepDensity(unsigned p, unsigned dim, unsigned level);
  static StepDensity constant(unsigned p, unsigned dim, const BigRational& value);
  /// Duplicate keys are summed; zero values dropped; negative values rejected.
  static StepDensity from_cells(unsigned p, unsigned dim, unsigned level, std::vector<Cell> cells);

  const CellLayout& layout() const { return layout_; }
  unsigned prime() const { return layout_.prime(); }
  unsigned dim() const { return layout_.dim(); }
  unsigned level() const { return layout_.level(); }
  std::size_t size() const { return cells_.size(); }
  /// Stored cells sorted by key; every stored value is positive.
  const std::vector<Cell>& cells() const { return cells_; }
  /// Values as doubles, parallel to cells().
  const std::vector<double>& approx_values() const { return approx_; }
  /// value_i = integer_weights()[i] / common_denominator(), when every
  /// weight and their sum fit in 63 bits; empty otherwise.
  const std::vector<u64>& integer_weights() const { return int_weights_; }
  const BigInt& common_denominator() const { return common_den_; }

  BigRational value_at(u64 key) const;
  BigRational value_at(std::span<const u64> coords) const { return value_at(layout_.key(coords)); }
  CellIndex cell_index(std::size_t i) const;

  /// Haar integral p^{-dL} * sum of stored values.
  BigRational haar_integral() const;
  BigRational max_value() const;
  /// Haar measure of one cell, p^{-dL}.
  BigRational cell_volume() const;

  friend bool operator==(const StepDensity& a, const StepDensity& b) {
    return a.prime() == b.prime() && a.dim() == b.dim() && a.level() == b.level() && a.cells_ == b.cells_;
  }

 private:
  CellLayout layout_;
  std::vector<Cell> cells_;
  std::vector<double> approx_;
  std::vector<u64> int_weights_;
  BigInt common_den_ = 1;
};

/// Subdivide every cell into its p^(d(L'-L)) children.
StepDensity refine(const StepDensity& f, unsigned new_level);
/// Pointwise product, at the finer of the two levels.
StepDensity multiply(const StepDensity& f, const StepDensity& g);

/// The measure (density) dx.
class StepMeasure {
 public:
  explicit StepMeasure(StepDensity density) : density_(std::move(density)) {}
  const StepDensity& density() const { return density_; }
  unsigned level() const { return density_.level(); }
  BigRational total_mass() const { return density_.haar_integral(); }

 private:
  StepDensity density_;
};

/// mu(B(x, p^-l)), exact. Throws ResolutionError for l > mu.level().
BigRational ball_mass(const StepMeasure& mu, std::span<const PadicRational> center, unsigned l);

/// Masses of all level-l balls meeting the support, keyed by ancestor key.
std::vector<std::pair<u64, BigRational>> ball_masses(const StepMeasure& mu, unsigned l);

void write_density(std::ostream& os, const StepDensity& f);
StepDensity read_density(std::istream& is);

}  // namespace padic

#pragma once

// The measures mu_k = psi_0 F_{M_1} ... F_{M_k} dx of a fixed schedule.

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padic/construction.hpp"
#include "padic/fourier.hpp"
#include "padic/schedule.hpp"
#include "padic/stepfn.hpp"

namespace padic {

struct BuildBudget {
  /// Cell placements allowed when building one F_M density.
  u64 cells = 5'000'000;
  /// Largest dense dual table kept for a mu_k.
  u64 dual_table = u64{1} << 22;
};

/// Levels are built in order until one no longer fits the budget; the rest of
/// the schedule is kept (M_k, L_k, |Q|) but mu_k for those k is implicit.
class KaufmanMeasure {
 public:
  explicit KaufmanMeasure(ConstructionParams params, BuildBudget budget = {});

  const ConstructionParams& params() const { return params_; }
  const LevelSchedule& schedule() const { return schedule_; }
  unsigned depth() const { return schedule_.depth(); }
  unsigned prime() const { return params_.p; }
  unsigned dim() const { return params_.dim(); }

  const StepDensity& psi0() const { return psi0_; }
  /// Q_{M_k} data for k >= 1, if Q_{M_k} could be enumerated.
  bool has_fm(unsigned k) const;
  const FMData& fm(unsigned k) const;
  bool fm_materialized(unsigned k) const { return k >= 1 && k < fm_density_.size() && fm_density_[k].has_value(); }
  /// Density of F_{M_k}, if materialized.
  const StepDensity& fm_density(unsigned k) const;

  /// mu_0 = psi_0 dx, then every k whose density was built.
  unsigned materialized_depth() const { return static_cast<unsigned>(mu_.size()) - 1; }
  bool materialized(unsigned k) const { return k <= materialized_depth(); }
  const StepMeasure& mu(unsigned k) const;

  /// R with mu_k^(t) = 0 whenever |t|_p > p^R (psi_0: 2 scalar, 0 matrix; else L_k).
  unsigned dual_radius(unsigned k) const;
  /// Dense table of mu_k^ on {|t|_p <= p^R}, when it fits the budget.
  const FourierTable* dual_cache(unsigned k) const;

  /// Why levels past materialized_depth() are implicit.
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  ConstructionParams params_;
  LevelSchedule schedule_;
  StepDensity psi0_;
  std::vector<std::optional<FMData>> fm_;
  std::vector<std::optional<StepDensity>> fm_density_;
  std::vector<StepMeasure> mu_;
  std::vector<std::unique_ptr<FourierTable>> dual_;
  std::vector<std::string> notes_;
};

/// mu_k as built (k <= materialized_depth()).
inline const StepMeasure& build_mu_k(const KaufmanMeasure& K, unsigned k) { return K.mu(k); }

/// mu_k^(s) by direct transform of the product density.
std::complex<double> ft_mu_direct(const KaufmanMeasure& K, unsigned k, const DualPoint& s);

/// mu_k^(s) = sum_t F_{M_k}^(s - t) mu_{k-1}^(t) over the dual cache of mu_{k-1}.
/// Throws std::logic_error if that cache or Q_{M_k} is unavailable.
std::complex<double> ft_mu_recursive(const KaufmanMeasure& K, unsigned k, const DualPoint& s);

struct WitnessRow {
  std::vector<u64> cell;
  unsigned level;  // i
  std::vector<u64> q, r;
};

struct WellApproxReport {
  unsigned k = 0;
  u64 cells_checked = 0;
  u64 witnesses_found = 0;
  bool ok = true;
  /// The first few witnesses, in cell order.
  std::vector<WitnessRow> table;
  std::vector<std::string> failures;
};

/// For each support cell x of mu_k and each i <= k, finds (q, r) in
/// Q_{M_i}^n x R_{M_i}^m with |xq - r|_p <= p^{-L_i}, and checks
/// p^{-L_i} <= max(|q|, |r|)^{-tau}.
WellApproxReport support_wellapprox_check(const KaufmanMeasure& K, unsigned k, std::size_t table_rows = 20);

}  // namespace padic

#pragma once

// Finite-level checks of the lemmas, and the diagnostics computed on mu_k:
// decay profiles, ball-mass regularity, counting bounds, Riesz energies and
// restriction ratios.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "padic/kaufman.hpp"

namespace padic {

struct SamplingOptions {
  /// Shells with at most this many points are enumerated.
  u64 shell_cap = 100'000;
  /// Seeded uniform points per larger shell.
  u64 samples = 10'000;
  u64 seed = 1;
  /// Add the points s = (q w mod p^l)/p^l + t near the F_M spikes.
  bool structured = true;
  /// Most structured points per shell (spikes times cache shifts).
  u64 structured_cap = 20'000;
  /// Exact checks: points per shell when a shell is too large to enumerate.
  u64 exact_samples = 40;
  /// Points tested past the cutoff (FM4, mu-k 4).
  u64 beyond_samples = 120;
  /// Cell evaluations allowed per exact clause before it switches to sampling.
  u64 exact_budget = 40'000'000;
};

struct ClauseResult {
  std::string clause;
  bool applicable = true;
  /// Exact clauses are identities; a failure is a hard failure.
  bool exact = true;
  bool ok = true;
  u64 points = 0;
  bool exhaustive = false;
  std::string detail;
};

struct LemmaReport {
  std::string name;
  std::vector<ClauseResult> clauses;
  /// FM3 C_meas, or the (mu-k 3) constant.
  double constant = 0;
  std::string constant_label;
  bool ok() const;
};

/// FM1, FM2, FM4 (exact), FM3 C_meas, the phi and geometric-sum identities.
LemmaReport verify_lemma_FM(const ConstructionParams& params, unsigned M, const SamplingOptions& opt = {});

/// (mu-k 1), (mu-k 2), (mu-k 4) exact on tested points, the recursion against
/// the direct transform, and the (mu-k 3) constant.
LemmaReport verify_lemma_muk(const KaufmanMeasure& K, unsigned k, const SamplingOptions& opt = {});

/// mu^(s) against mu^(s + z) for `count` seeded s and rationals z with
/// |z|_p <= 1, the second evaluated at the unreduced representative; exact.
ClauseResult periodicity_check(const StepMeasure& mu, unsigned count = 50, u64 seed = 1);

struct ShellStats {
  unsigned ell = 0;
  double max_abs = 0;
  std::string argmax;
  u64 points = 0;
  bool exhaustive = false;
  /// max_abs |s|^beta / (ln^e(1 + |s|) g(|s|)).
  double ratio = 0;
};

struct DecayProfile {
  unsigned p = 0, k = 0, dim = 1;
  Shape shape;
  BigRational tau;
  Growth g;
  unsigned M = 0, L = 0;
  double beta = 0;
  unsigned log_power = 2;
  u64 seed = 0;
  std::string evaluator;
  std::vector<ShellStats> shells;

  /// Largest ratio over (p^M, p^L].
  double window_ratio() const;
};

/// Shells 0..max_shell (default L_k). Throws SizeError when mu_k^ has no
/// evaluator (level not materialized and no dual cache for the recursion).
DecayProfile decay_profile(const KaufmanMeasure& K, unsigned k, const SamplingOptions& opt = {},
                           std::optional<unsigned> max_shell = {});

struct DimEstimate {
  std::vector<unsigned> shells;
  std::vector<unsigned> zero_shells;
  double slope_raw = 0, slope_corrected = 0;
  /// -slope, the decay exponent, and 2 * exponent.
  double exponent_raw = 0, exponent_corrected = 0;
  double dim_raw = 0, dim_corrected = 0;
  /// 1/tau scalar, n/tau matrix.
  double target_exponent = 0;
};

/// Least squares over the nonzero shells in (p^M, p^L]. Throws
/// std::invalid_argument with fewer than 3 such shells.
DimEstimate fourier_dim_estimate(const DecayProfile& profile);

struct RegularityRow {
  unsigned ell = 0;
  /// Exact maximum when known; otherwise [lo, hi] brackets it.
  bool exact = true;
  BigRational max_mass;
  double lo = 0, hi = 0;
  std::string argmax;
  double bound = 0;
  /// hi / bound.
  double ratio = 0;
  std::string case_tag;
  std::string method;
};

struct RegularityReport {
  unsigned k = 0;
  std::vector<RegularityRow> rows;
  /// max ratio over l >= 1.
  double C = 0;
  std::vector<std::string> notes;
};

/// l = 0..max_ell (default L_k). The bound at l = 0 is taken to be 1.
/// An implicit mu_k is handled from mu_{k-1} and |Q_{M_k}| (scalar only).
RegularityReport regularity_scan(const KaufmanMeasure& K, unsigned k, std::optional<unsigned> max_ell = {});

struct CountingRow {
  std::string lemma;
  unsigned j = 0, k = 0, ell = 0;
  u64 instances = 0;
  BigRational measured, bound;
  bool holds = true;
};

struct CountingReport {
  std::vector<CountingRow> rows;
  std::vector<std::string> notes;
  u64 instances = 0, violations = 0;
  bool ok() const { return violations == 0; }
};

/// Disjoint balls and the FM bound at M_j, non-i-ball (a)/(b) at M_j for
/// every center of level l (all l <= L_j unless given), and the i-ball bound
/// for the pair (j, k). Scalar schedules only.
CountingReport counting_checks(const ConstructionParams& params, const LevelSchedule& schedule, unsigned j,
                               unsigned k, std::optional<unsigned> ell = {});

struct EnergyReport {
  BigRational alpha;
  unsigned level = 0;
  double spatial = 0;
  double fourier = 0;
  /// Same-cell pairs were given distance p^-L.
  bool truncated = true;
  /// sum over level-l balls of mu(B)^2, l = 0..L.
  std::vector<BigRational> square_sums;
};

/// Throws std::invalid_argument unless 0 < alpha < d.
EnergyReport riesz_energy(const StepMeasure& mu, const BigRational& alpha);

struct RestrictionFamily {
  unsigned count = 200;
  unsigned max_level = 4;
  u64 seed = 1;
};

struct RestrictionRow {
  std::string name;
  unsigned level = 0;
  double integral = 0, norm = 0, ratio = 0;
};

struct RestrictionReport {
  BigRational q;
  u64 seed = 0;
  std::vector<RestrictionRow> rows;
  std::size_t argmax = 0;
  double max_ratio = 0;
};

/// (int |f^|^2 dmu)^{1/2} / ||f||_q over the seeded family. f lives on
/// p^{-l} Z_p^d, constant on unit balls; f^ on Z_p^d then only depends on x
/// mod p^l. The first member is 1_{Z_p^d}. Throws std::invalid_argument for q < 1.
RestrictionReport restriction_ratio(const StepMeasure& mu, const BigRational& q, const RestrictionFamily& family = {});

/// 1 + beta / (4d - 4 alpha + beta).
BigRational restriction_endpoint(const BigRational& alpha, const BigRational& beta, unsigned d);
/// alpha = beta = 2/tau, d = 1: 1 + 1/(2 tau - 3).
BigRational scalar_restriction_endpoint(const BigRational& tau);

}  // namespace padic

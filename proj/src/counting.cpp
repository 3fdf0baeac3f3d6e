#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "padic/analysis.hpp"

namespace padic {

namespace {

void add_row(CountingReport& rep, CountingRow row) {
  rep.instances += row.instances;
  if (!row.holds) ++rep.violations;
  rep.rows.push_back(std::move(row));
}

BigRational pow_rat(unsigned p, long e) {
  return e >= 0 ? BigRational(big_pow(p, static_cast<unsigned>(e))) : BigRational(1) / BigRational(big_pow(p, -e));
}

/// Distinct level-L cells (r q^{-1} mod p^L) of the j-balls.
std::vector<u64> ball_cells(const FMData& f) {
  const u64 N = ipow(f.prime(), f.L());
  std::vector<u64> cells;
  cells.reserve(f.Q().size() * f.R());
  for (std::size_t i = 0; i < f.Q().size(); ++i)
    for (u64 r = 0; r < f.R(); ++r) cells.push_back(mulmod(r, f.Q_inverse()[i], N));
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

CountingReport counting_checks(const ConstructionParams& params, const LevelSchedule& schedule, unsigned j,
                               unsigned k, std::optional<unsigned> ell) {
  if (params.shape.matrix) throw std::invalid_argument("counting_checks: scalar schedules only");
  if (j == 0 || j > k || k > schedule.depth()) throw std::invalid_argument("counting_checks: need 1 <= j <= k <= K");
  const unsigned p = params.p, Mj = schedule.M[j], Lj = schedule.L[j];
  const FMData fj(params, Mj);
  const u64 Qj = fj.Q().size();
  CountingReport rep;

  {
    // |r/q - r'/q'|_p > p^{-2M} for distinct fractions: distinct residues mod p^{2M}
    if (!pow_fits(p, 2 * Mj)) throw SizeError("counting_checks: p^(2M_j) exceeds the index range");
    const u64 N2 = ipow(p, 2 * Mj);
    std::vector<std::pair<u64, std::pair<u64, u64>>> keyed;
    for (u64 q : fj.Q()) {
      const u64 qinv = inverse_mod(q % N2, N2);
      for (u64 r = 0; r < fj.R(); ++r) keyed.push_back({mulmod(r, qinv, N2), {q, r}});
    }
    std::sort(keyed.begin(), keyed.end());
    u64 bad = 0, pairs = 0;
    for (std::size_t a = 0; a < keyed.size();) {
      std::size_t b = a;
      while (b < keyed.size() && keyed[b].first == keyed[a].first) ++b;
      for (std::size_t x = a; x < b; ++x)
        for (std::size_t y = x + 1; y < b; ++y) {
          const auto [q1, r1] = keyed[x].second;
          const auto [q2, r2] = keyed[y].second;
          if (static_cast<u128>(r1) * q2 != static_cast<u128>(r2) * q1) ++bad;
        }
      a = b;
    }
    pairs = keyed.size() * (keyed.size() - 1) / 2;
    add_row(rep, {"disjoint balls", j, j, 2 * Mj, pairs, BigRational(BigInt(static_cast<unsigned long>(bad))), 0, bad == 0});
  }

  const StepDensity Fj = fj.build();
  {
    // F_M <= p^L / (|Q| |R|) on p^{-L} < |x| < 1
    const BigRational bound = BigRational(big_pow(p, Lj)) / BigRational(BigInt(static_cast<unsigned long>(Qj)) * BigInt(static_cast<unsigned long>(fj.R())));
    BigRational worst = 0;
    u64 n = 0;
    for (const auto& [key, v] : Fj.cells()) {
      if (key == 0 || key % p != 0) continue;
      ++n;
      worst = std::max(worst, v);
    }
    add_row(rep, {"FM bound", j, j, Lj, n, worst, bound, worst <= bound});
  }

  const std::vector<u64> jballs = ball_cells(fj);
  const unsigned lo = ell.value_or(0), hi = ell.value_or(Lj);
  for (unsigned l = lo; l <= std::min(hi, Lj); ++l) {
    const u64 Nl = ipow(p, l);
    std::unordered_map<u64, u64> J;
    for (u64 c : jballs) ++J[c % Nl];
    u64 worst = 0;
    for (const auto& [_, c] : J) worst = std::max(worst, c);
    const BigRational a = std::max(BigRational(1), pow_rat(p, 2L * Mj - l));
    const BigRational b = std::max(BigRational(1), pow_rat(p, static_cast<long>(Mj) - l)) *
                          BigRational(BigInt(static_cast<unsigned long>(Qj)));
    const BigRational w(BigInt(static_cast<unsigned long>(worst)));
    add_row(rep, {"non-i-ball (a)", j, j, l, Nl, w, a, w <= a});
    add_row(rep, {"non-i-ball (b)", j, j, l, Nl, w, b, w <= b});
  }

  // i-ball: k-balls of supp(P_k) inside each j-ball that meets it
  bool applicable = true;
  for (unsigned i = j + 1; i <= k; ++i)
    if (schedule.L[i - 1] > schedule.M[i]) {
      applicable = false;
      rep.notes.push_back("i-ball (" + std::to_string(j) + "," + std::to_string(k) + ") skipped: ceil(tau M_" +
                          std::to_string(i - 1) + ") = " + std::to_string(schedule.L[i - 1]) + " > M_" +
                          std::to_string(i) + ", outside the lemma's hypothesis");
    }
  if (applicable) {
    std::vector<std::unordered_set<u64>> supp(k + 1);
    std::vector<u64> top;
    for (unsigned i = 1; i <= k; ++i) {
      const FMData fi(params, schedule.M[i]);
      std::vector<u64> cells = i == j ? jballs : ball_cells(fi);
      if (i == k) top = cells;
      else supp[i].insert(cells.begin(), cells.end());
    }
    std::map<u64, u64> inside;  // j-ball cell -> k-balls of supp(P_k)
    for (u64 c : top) {
      bool in = true;
      for (unsigned i = 1; i < k && in; ++i) in = supp[i].count(c % ipow(p, schedule.L[i])) > 0;
      if (in) ++inside[c % ipow(p, Lj)];
    }
    BigRational bound = 1;
    for (unsigned i = j + 1; i <= k; ++i)
      bound *= BigRational(schedule.q_count[i].lo) * pow_rat(p, static_cast<long>(schedule.M[i]) - schedule.L[i - 1]);
    u64 worst = 0;
    for (const auto& [_, c] : inside) worst = std::max(worst, c);
    const BigRational w(BigInt(static_cast<unsigned long>(worst)));
    add_row(rep, {"i-ball", j, k, schedule.L[k], inside.size(), w, bound, w <= bound && (j != k || worst <= 1)});
    if (j == k && !inside.empty() && worst != 1) rep.notes.push_back("base step: a j-ball is not its own support");
  }
  return rep;
}

}  // namespace padic

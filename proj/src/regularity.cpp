#include <cmath>
#include <sstream>
#include <stdexcept>

#include "padic/analysis.hpp"

namespace padic {

namespace {

std::string case_tag(const LevelSchedule& s, unsigned l) {
  if (l <= s.L[0]) return "trivial (l <= L_0)";
  for (unsigned j = 1; j <= s.depth(); ++j) {
    if (l > s.L[j]) continue;
    const std::string J = "j=" + std::to_string(j) + ": ";
    if (l > 2 * s.M[j]) return J + "2M_j < l <= L_j";
    if (l > s.M[j]) return J + "M_j < l <= 2M_j";
    return J + "L_{j-1} < l <= M_j";
  }
  return "beyond L_K";
}

long double bound_at(const ConstructionParams& params, unsigned l) {
  if (l == 0) return 1;  // ln(p^0) = 0; the convention is bound(0) = 1
  const long double lnp = std::log(static_cast<long double>(params.p));
  const long double tau = params.tau.get_d();
  return std::exp(-2.0L * l * lnp / tau + std::log(l * lnp) + params.g.ln_at_power(params.p, l));
}

std::string center_string(const CellLayout& layout, u64 key, unsigned l) {
  std::ostringstream os;
  os << "(";
  auto c = layout.coords(key);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ") mod " << layout.prime() << "^" << l;
  return os.str();
}

/// Exact max ball mass of a step measure at any level.
RegularityRow exact_max(const StepMeasure& mu, unsigned l) {
  RegularityRow row;
  row.ell = l;
  const StepDensity& D = mu.density();
  if (l <= mu.level()) {
    auto masses = ball_masses(mu, l);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < masses.size(); ++i)
      if (masses[i].second > masses[arg].second) arg = i;
    if (!masses.empty()) {
      row.max_mass = masses[arg].second;
      row.argmax = center_string(CellLayout(D.prime(), D.dim(), l), masses[arg].first, l);
    }
    row.method = "aggregation";
  } else {
    // inside one cell the mass is density * p^{-dl}
    std::size_t arg = 0;
    for (std::size_t i = 1; i < D.size(); ++i)
      if (D.cells()[i].second > D.cells()[arg].second) arg = i;
    if (D.size() > 0) {
      row.max_mass = D.cells()[arg].second / BigRational(big_pow(D.prime(), D.dim() * l));
      row.argmax = "any sub-ball of " + center_string(D.layout(), D.cells()[arg].first, D.level());
    }
    row.method = "within-cell";
  }
  row.lo = row.hi = row.max_mass.get_d();
  return row;
}

}  // namespace

RegularityReport regularity_scan(const KaufmanMeasure& K, unsigned k, std::optional<unsigned> max_ell) {
  if (k > K.depth()) throw std::invalid_argument("regularity_scan: k exceeds the schedule depth");
  const LevelSchedule& s = K.schedule();
  const ConstructionParams& params = K.params();
  const unsigned top = max_ell.value_or(s.L[k]);
  RegularityReport rep;
  rep.k = k;
  rep.notes.push_back("bound(l) = p^(-2l/tau) ln(p^l) g(p^l), natural log; bound(0) := 1 by convention");
  if (params.shape.matrix) rep.notes.push_back("matrix regularity is not a theorem; the scalar bound is reported");

  const bool implicit = !K.materialized(k);
  if (implicit) {
    if (params.shape.matrix || k == 0 || !K.materialized(k - 1))
      throw SizeError("regularity_scan: mu_" + std::to_string(k) + " is implicit and cannot be bracketed");
    if (s.L[k - 1] > s.M[k])
      throw std::logic_error("regularity_scan: implicit mu_k needs ceil(tau M_{k-1}) <= M_k");
    rep.notes.push_back(
        "mu_" + std::to_string(k) +
        " implicit: equal to mu_{k-1} on balls with l <= M_k; beyond, mu_k(B) = d(C) N(B) / (|Q| p^M) "
        "with N(B) = #{(q,r): r/q in B} bracketed by N <= min(max(1, p^(2M-l)), |Q|) and the pigeonhole "
        "bound N >= max(1, |Q| p^(M-l)) in the densest cell; |Q_M| = " + s.q_count[k].to_string());
  }

  for (unsigned l = 0; l <= top; ++l) {
    RegularityRow row;
    if (!implicit) {
      row = exact_max(K.mu(k), l);
    } else if (l <= s.M[k]) {
      row = exact_max(K.mu(k - 1), l);
      row.method = "equals mu_{k-1} (" + row.method + ")";
    } else {
      const StepDensity& prev = K.mu(k - 1).density();
      const BigRational dmax = prev.max_value();
      const unsigned M = s.M[k], p = params.p;
      const PrimeCount& Q = s.q_count[k];
      const BigRational pM = BigRational(big_pow(p, M));
      BigRational hi, lo;
      if (l <= s.L[k]) {
        const BigRational nb = l >= 2 * M ? BigRational(1) : BigRational(big_pow(p, 2 * M - l));
        BigRational share_hi = nb / BigRational(Q.lo);
        if (share_hi > 1) share_hi = 1;
        BigRational share_lo = BigRational(1, 1) / BigRational(Q.hi);
        const BigRational spread = BigRational(1) / BigRational(big_pow(p, l - M));
        if (spread > share_lo) share_lo = spread;
        hi = dmax * share_hi / pM;
        lo = dmax * share_lo / pM;
      } else {
        // one F-cell: N <= 1 pair, density p^L / (|Q| p^M)
        const BigRational cell = BigRational(big_pow(p, s.L[k])) / BigRational(big_pow(p, l));
        hi = dmax * cell / (BigRational(Q.lo) * pM);
        lo = dmax * cell / (BigRational(Q.hi) * pM);
      }
      hi.canonicalize();
      lo.canonicalize();
      row.ell = l;
      row.exact = hi == lo;
      row.max_mass = hi;
      row.hi = hi.get_d();
      row.lo = lo.get_d();
      row.argmax = "densest cell of mu_{k-1}";
      row.method = "bracket";
    }
    row.bound = static_cast<double>(bound_at(params, l));
    row.ratio = row.hi / row.bound;
    row.case_tag = case_tag(s, l);
    if (l >= 1) rep.C = std::max(rep.C, row.ratio);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace padic

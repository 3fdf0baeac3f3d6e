#include "padic/kaufman.hpp"

#include <stdexcept>

namespace padic {

KaufmanMeasure::KaufmanMeasure(ConstructionParams params, BuildBudget budget)
    : params_(std::move(params)),
      schedule_(choose_Mk(params_)),
      psi0_(build_psi0(params_, schedule_)) {
  mu_.emplace_back(psi0_);
  fm_.resize(depth() + 1);
  fm_density_.resize(depth() + 1);
  for (unsigned k = 1; k <= depth(); ++k) {
    try {
      fm_[k].emplace(params_, schedule_.M[k]);
    } catch (const SizeError& e) {
      notes_.push_back("level " + std::to_string(k) + ": Q_M not enumerated (" + e.what() + ")");
    }
  }
  for (unsigned k = 1; k <= depth(); ++k) {
    if (!fm_[k]) break;
    const FMData& f = *fm_[k];
    if (f.placement_count() > BigInt(std::to_string(budget.cells)) || !pow_fits(prime(), dim() * f.L())) {
      notes_.push_back("level " + std::to_string(k) + ": F_M density needs " + f.placement_count().get_str() +
                       " placements, over the cell budget; mu_k left implicit");
      break;
    }
    fm_density_[k] = f.build(budget.cells);
    mu_.emplace_back(multiply(mu_.back().density(), *fm_density_[k]));
  }
  for (unsigned k = 0; k <= materialized_depth(); ++k) {
    const StepDensity& d = mu_[k].density();
    if (d.layout().cell_count() <= budget.dual_table)
      dual_.push_back(std::make_unique<FourierTable>(ft_table(d, budget.dual_table)));
    else
      dual_.push_back(nullptr);
  }
}

bool KaufmanMeasure::has_fm(unsigned k) const { return k >= 1 && k <= depth() && fm_[k].has_value(); }

const FMData& KaufmanMeasure::fm(unsigned k) const {
  if (!has_fm(k)) throw std::logic_error("Q_M for level " + std::to_string(k) + " is not available");
  return *fm_[k];
}

const StepDensity& KaufmanMeasure::fm_density(unsigned k) const {
  if (k == 0 || k > depth() || !fm_density_[k])
    throw std::logic_error("F_M density for level " + std::to_string(k) + " is not materialized");
  return *fm_density_[k];
}

const StepMeasure& KaufmanMeasure::mu(unsigned k) const {
  if (!materialized(k)) throw std::logic_error("mu_" + std::to_string(k) + " is not materialized");
  return mu_[k];
}

unsigned KaufmanMeasure::dual_radius(unsigned k) const {
  if (k == 0) return params_.shape.matrix ? 0 : 2;
  return schedule_.L.at(k);
}

const FourierTable* KaufmanMeasure::dual_cache(unsigned k) const {
  if (k >= dual_.size()) return nullptr;
  return dual_[k].get();
}

std::complex<double> ft_mu_direct(const KaufmanMeasure& K, unsigned k, const DualPoint& s) {
  return ft_point(K.mu(k).density(), s);
}

std::complex<double> ft_mu_recursive(const KaufmanMeasure& K, unsigned k, const DualPoint& s) {
  if (k == 0) throw std::invalid_argument("ft_mu_recursive needs k >= 1");
  const FourierTable* prev = K.dual_cache(k - 1);
  if (!prev) throw std::logic_error("dual cache of mu_" + std::to_string(k - 1) + " is unavailable");
  const FMData& f = K.fm(k);
  const unsigned R = prev->level();
  // |s - t|_p = |s|_p for every cached t once |s|_p > p^R
  if (s.level() > R && s.level() > f.L()) return 0.0;
  const unsigned top = std::max(R, s.level());
  const u64 N = ipow(K.prime(), top), lift = ipow(K.prime(), top - R);
  const std::vector<u64> a = s.numerators(top);
  std::vector<u64> diff(a.size()), t(a.size());
  std::complex<double> acc = 0;
  const CellLayout& layout = prev->layout();
  for (u64 key = 0; key < prev->size(); ++key) {
    const std::complex<double> w = prev->at(key);
    if (w == 0.0) continue;
    for (unsigned i = 0; i < a.size(); ++i) t[i] = layout.coord(key, i);
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = submod(a[i], mulmod(t[i], lift, N), N);
    acc += f.ft_at(diff, top) * w;
  }
  return acc;
}

namespace {

// max(|q|, |r|)^tau <= p^L, exactly: max^a <= p^{L b} for tau = a/b.
bool tau_compatible(u64 maxqr, const BigRational& tau, unsigned p, unsigned L) {
  BigInt lhs;
  mpz_pow_ui(lhs.get_mpz_t(), BigInt(std::to_string(maxqr)).get_mpz_t(), tau.get_num().get_ui());
  return lhs <= big_pow(p, static_cast<unsigned>(L * tau.get_den().get_ui()));
}

}  // namespace

WellApproxReport support_wellapprox_check(const KaufmanMeasure& K, unsigned k, std::size_t table_rows) {
  WellApproxReport rep;
  rep.k = k;
  const StepDensity& dens = K.mu(k).density();
  const unsigned m = K.params().shape.m, n = K.params().shape.n;
  for (std::size_t c = 0; c < dens.size(); ++c) {
    const std::vector<u64> x = dens.layout().coords(dens.cells()[c].first);
    ++rep.cells_checked;
    for (unsigned i = 1; i <= k; ++i) {
      const FMData& f = K.fm(i);
      const u64 N = ipow(K.prime(), f.L());
      std::vector<std::size_t> qi(n, 0);
      bool found = false;
      std::vector<u64> q(n), r(m);
      while (!found) {
        for (unsigned j = 0; j < n; ++j) q[j] = f.Q()[qi[j]];
        bool ok = true;
        for (unsigned row = 0; row < m && ok; ++row) {
          u64 v = 0;
          for (unsigned j = 0; j < n; ++j) v = addmod(v, mulmod(x[row * n + j] % N, q[j] % N, N), N);
          r[row] = v;
          ok = v < f.R();
        }
        if (ok) {
          found = true;
          break;
        }
        unsigned t = 0;
        while (t < n && ++qi[t] == f.Q().size()) qi[t++] = 0;
        if (t == n) break;
      }
      if (!found) {
        rep.ok = false;
        rep.failures.push_back("cell " + std::to_string(dens.cells()[c].first) + " has no witness at level " +
                               std::to_string(i));
        continue;
      }
      u64 maxqr = 0;
      for (u64 v : q) maxqr = std::max(maxqr, v);
      for (u64 v : r) maxqr = std::max(maxqr, v);
      if (!tau_compatible(std::max<u64>(maxqr, 1), K.params().tau, K.prime(), f.L())) {
        rep.ok = false;
        rep.failures.push_back("cell " + std::to_string(dens.cells()[c].first) +
                               ": witness too large for p^-L <= max(|q|,|r|)^-tau at level " + std::to_string(i));
      }
      ++rep.witnesses_found;
      if (rep.table.size() < table_rows) rep.table.push_back({x, i, q, r});
    }
  }
  return rep;
}

}  // namespace padic

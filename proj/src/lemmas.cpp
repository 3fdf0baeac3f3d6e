#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include "padic/analysis.hpp"
#include "padic/parallel.hpp"
#include "shells.hpp"

namespace padic {

namespace {

ClauseResult make_clause(std::string name) {
  ClauseResult c;
  c.clause = std::move(name);
  return c;
}

std::string shape_label(const ConstructionParams& params) {
  return params.shape.matrix ? params.shape.name() : "scalar";
}

/// Runs an exact predicate over points in parallel; counts failures and keeps
/// the first failing point (in point order).
struct PointCheck {
  u64 tested = 0, failures = 0;
  std::string first_failure;
};

template <class Pred>
PointCheck check_points(unsigned p, const std::vector<std::vector<u64>>& pts, unsigned l, Pred&& pred) {
  std::vector<char> ok(pts.size(), 1);
  parallel_for(pts.size(), [&](std::size_t i) { ok[i] = pred(pts[i], l) ? 1 : 0; });
  PointCheck r;
  r.tested = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (ok[i]) continue;
    if (r.failures++ == 0) r.first_failure = DualPoint::from_numerators(p, pts[i], l).to_string();
  }
  return r;
}

void absorb(ClauseResult& c, const PointCheck& r) {
  c.points += r.tested;
  if (r.failures > 0) {
    c.ok = false;
    if (c.detail.empty()) c.detail = "first failure at " + r.first_failure;
  }
}

/// Points of shells lo..hi for an exact clause costing `cost` cell evaluations
/// per point. Shells are enumerated while the budget allows.
std::vector<std::pair<unsigned, std::vector<std::vector<u64>>>> exact_shells(unsigned p, unsigned d, unsigned lo,
                                                                              unsigned hi, u64 cost,
                                                                              const SamplingOptions& opt,
                                                                              bool& exhaustive) {
  exhaustive = true;
  std::vector<std::pair<unsigned, std::vector<std::vector<u64>>>> out;
  u64 spent = 0;
  for (unsigned l = lo; l <= hi; ++l) {
    const u64 size = detail::shell_size(p, d, l);
    const bool full = size <= opt.shell_cap && (cost == 0 || size <= (opt.exact_budget - std::min(spent, opt.exact_budget)) / cost);
    if (full) {
      out.emplace_back(l, detail::shell_points(p, d, l));
      spent += size * cost;
    } else {
      exhaustive = false;
      const u64 left = opt.exact_budget - std::min(spent, opt.exact_budget);
      const u64 count = std::max<u64>(1, std::min(opt.exact_samples, cost == 0 ? opt.exact_samples : left / cost));
      out.emplace_back(l, detail::sample_shell(p, d, l, count, detail::mix_seed(opt.seed, l, 17)));
      spent += count * cost;
    }
  }
  return out;
}

// Exact Riemann sum of f over the cells of level l > f.level() (every cell
// split into its children), tested for zero at s = a / p^l. Nothing is
// materialized; phases are sorted and merged.
bool refined_transform_is_zero(const StepDensity& f, unsigned l, const std::vector<u64>& a) {
  const unsigned p = f.prime(), d = f.dim(), L = f.level();
  const u64 order = ipow(p, l), children = ipow(p, d * (l - L)), child_side = ipow(p, l - L);
  const u64 lift = ipow(p, L);
  std::vector<u64> step(d);
  for (unsigned i = 0; i < d; ++i) step[i] = mulmod(lift % order, a[i] % order, order);
  const auto& weights = f.integer_weights();
  const bool integral = !weights.empty();
  std::vector<std::pair<u64, std::size_t>> phases;
  phases.reserve(f.size() * children);
  for (std::size_t c = 0; c < f.size(); ++c) {
    u64 base = 0;
    for (unsigned i = 0; i < d; ++i)
      base = addmod(base, mulmod(f.layout().coord(f.cells()[c].first, i) % order, a[i] % order, order), order);
    for (u64 j = 0; j < children; ++j) {
      u64 phase = base, rest = j;
      for (unsigned i = 0; i < d; ++i, rest /= child_side)
        phase = addmod(phase, mulmod(rest % child_side, step[i], order), order);
      phases.emplace_back(phase, c);
    }
  }
  std::sort(phases.begin(), phases.end());
  CyclotomicSum sum(p, l);
  for (std::size_t i = 0; i < phases.size();) {
    std::size_t j = i;
    if (integral) {
      unsigned __int128 acc = 0;
      for (; j < phases.size() && phases[j].first == phases[i].first; ++j) acc += weights[phases[j].second];
      BigInt big(static_cast<unsigned long>(static_cast<u64>(acc >> 64)));
      big <<= 64;
      big += BigInt(static_cast<unsigned long>(static_cast<u64>(acc)));
      sum.add_term(phases[i].first, BigRational(big));
    } else {
      BigRational acc = 0;
      for (; j < phases.size() && phases[j].first == phases[i].first; ++j) acc += f.cells()[phases[j].second].second;
      sum.add_term(phases[i].first, acc);
    }
    i = j;
  }
  return sum.is_zero();
}

}  // namespace

bool LemmaReport::ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return !c.applicable || c.ok; });
}

LemmaReport verify_lemma_FM(const ConstructionParams& params, unsigned M, const SamplingOptions& opt) {
  const FMData f(params, M);
  const unsigned p = params.p, d = f.dim(), L = f.L();
  LemmaReport rep;
  rep.name = "FM M=" + std::to_string(M) + " " + shape_label(params);

  std::optional<StepDensity> density;
  std::string density_note;
  try {
    density = f.build();
  } catch (const SizeError& e) {
    density_note = e.what();
  }

  const u64 closed_cost = static_cast<u64>(f.Q().size()) * f.R() * (params.shape.matrix ? params.shape.m : 1);
  const u64 dens_cost = density ? density->size() : 0;

  {
    ClauseResult c = make_clause("FM1");
    const DualPoint zero = DualPoint::zero(p, d);
    auto v = f.ft_exact(zero).as_rational();
    c.ok = v && *v == 1;
    if (density) {
      auto w = ft_point_exact(*density, zero).as_rational();
      c.ok = c.ok && w && *w == 1 && density->haar_integral() == 1;
    }
    c.points = 1;
    c.exhaustive = true;
    c.detail = "F_M^(0) = " + (v ? v->get_str() : std::string("irrational")) +
               (density ? ", density integral checked" : ", closed form only");
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c = make_clause("FM2");
    bool exhaustive = false;
    auto shells = exact_shells(p, d, 1, M, closed_cost + dens_cost, opt, exhaustive);
    for (const auto& [l, pts] : shells) {
      absorb(c, check_points(p, pts, l, [&](const std::vector<u64>& a, unsigned lev) {
               const DualPoint s = DualPoint::from_numerators(p, a, lev);
               if (!f.ft_exact(s).is_zero()) return false;
               return !density || ft_point_exact(*density, s).is_zero();
             }));
    }
    c.exhaustive = exhaustive;
    if (c.detail.empty())
      c.detail = exhaustive ? "every 0 < |s| <= p^M"
                            : "sampled shells; the closed form vanishes on every such s because each geometric "
                              "sum over r < p^M runs over a full period";
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c = make_clause("FM4");
    if (!density) {
      c.applicable = false;
      c.detail = "density not materialized: " + density_note;
    } else {
      // Riemann sum of the refined density: no cutoff is involved
      unsigned reached = 0;
      for (unsigned extra = 1; extra <= 2; ++extra) {
        const unsigned l = L + extra;
        if (!pow_fits(p, d * l)) break;
        const u64 refined = density->size() * ipow(p, d * extra);
        if (refined > opt.exact_budget / 4) break;
        const u64 want = std::max<u64>(opt.beyond_samples / 2, 1);
        const u64 count = std::max<u64>(1, std::min(want, opt.exact_budget / std::max<u64>(refined, 1)));
        auto pts = detail::sample_shell(p, d, l, count, detail::mix_seed(opt.seed, l, 41));
        absorb(c, check_points(p, pts, l, [&](const std::vector<u64>& a, unsigned) {
                 return refined_transform_is_zero(*density, l, a);
               }));
        reached = l;
      }
      if (c.points == 0) {
        c.applicable = false;
        c.detail = "refined density exceeds the exact budget";
      } else if (c.detail.empty()) {
        c.detail = "|s| = p^(L+1) .. p^" + std::to_string(reached) + " via the refined density";
      }
    }
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c = make_clause("FM3");
    c.exact = false;
    const unsigned n = params.shape.matrix ? params.shape.n : 1;
    const double beta = n / params.tau.get_d();
    const double lnp = std::log(static_cast<double>(p));
    bool all = true;
    double best = 0;
    std::string where;
    for (unsigned l = M + 1; l <= L; ++l) {
      bool ex = false;
      auto pts = detail::shell_selection(p, d, l, opt.shell_cap, opt.samples, detail::mix_seed(opt.seed, l, 3), ex);
      all = all && ex;
      if (!ex && opt.structured) {
        auto extra = detail::spike_points(f, l);
        pts.insert(pts.end(), extra.begin(), extra.end());
      }
      std::vector<double> mag(pts.size());
      parallel_for(pts.size(), [&](std::size_t i) { mag[i] = std::abs(f.ft_at(pts[i], l)); });
      const double norm = std::exp(-beta * l * lnp) * std::pow(l * lnp, n + 1);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (mag[i] / norm > best) {
          best = mag[i] / norm;
          where = DualPoint::from_numerators(p, pts[i], l).to_string();
        }
      }
      c.points += pts.size();
    }
    c.exhaustive = all;
    rep.constant = best;
    rep.constant_label = "C_meas";
    std::ostringstream os;
    os.precision(6);
    os << "C_meas = " << best << (where.empty() ? "" : " at " + where) << (all ? " (exhaustive)" : " (sampled)");
    c.detail = os.str();
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c = make_clause("phi");
    if (params.shape.matrix) {
      c.applicable = false;
      c.detail = "scalar identity";
    } else {
      const u64 N = ipow(p, L);
      std::vector<std::pair<u64, u64>> pairs;
      for (u64 q : {f.Q().front(), f.Q().back()})
        for (u64 r : {u64{0}, u64{1}, f.R() - 1}) pairs.emplace_back(q, r);
      std::vector<DualPoint> pts;
      for (unsigned l = 0; l <= L; ++l)
        for (const auto& a : detail::sample_shell(p, 1, l, l == 0 ? 1 : 4, detail::mix_seed(opt.seed, l, 5)))
          pts.push_back(DualPoint::from_numerators(p, a, l));
      for (const auto& [q, r] : pairs) {
        const u64 idx = mulmod(r % N, inverse_mod(q % N, N), N);
        const StepDensity phi =
            StepDensity::from_cells(p, 1, L, {{idx, BigRational(big_pow(p, L))}});
        for (const DualPoint& s : pts) {
          CyclotomicSum want(p);
          want.add_phase(char_phase(PadicRational(p, BigRational(static_cast<long>(r))) * s.coords()[0] /
                                    PadicRational(p, BigRational(static_cast<long>(q)))),
                         1);
          ++c.points;
          if (!(ft_point_exact(phi, s) == want)) {
            c.ok = false;
            if (c.detail.empty()) c.detail = "mismatch at q=" + std::to_string(q) + " r=" + std::to_string(r);
          }
        }
      }
      if (c.detail.empty()) c.detail = "phi_{q,r}^(s) = e({rs/q}) for |s| <= p^L";
    }
    rep.clauses.push_back(c);
  }

  {
    ClauseResult c = make_clause("geometric");
    const u64 R = f.R();
    if (R > 20'000) {
      c.applicable = false;
      c.detail = "p^M too large to expand";
    } else {
      for (unsigned l : {M, L}) {
        if (!pow_fits(p, l)) continue;
        const u64 N = ipow(p, l);
        for (u64 w : {u64{1}, u64{2} % N, N - 1}) {
          if (w == 0) continue;
          CyclotomicSum S(p, l), one_minus(p, l), rhs(p, l);
          for (u64 r = 0; r < R; ++r) S.add_term(mulmod(r, w, N), 1);
          one_minus.add_term(0, 1);
          one_minus.add_term(w, -1);
          rhs.add_term(0, 1);
          rhs.add_term(mulmod(R % N, w, N), -1);
          ++c.points;
          if (!(one_minus * S == rhs)) {
            c.ok = false;
            c.detail = "(1 - z^w) sum z^(rw) != 1 - z^(Rw) at w=" + std::to_string(w);
          }
        }
      }
      if (c.detail.empty()) c.detail = "(1 - z^w) sum_{r<p^M} z^(rw) = 1 - z^(p^M w)";
    }
    rep.clauses.push_back(c);
  }
  return rep;
}

LemmaReport verify_lemma_muk(const KaufmanMeasure& K, unsigned k, const SamplingOptions& opt) {
  LemmaReport rep;
  rep.name = "mu-k k=" + std::to_string(k) + " " + shape_label(K.params());
  if (k == 0 || k > K.depth()) throw std::invalid_argument("verify_lemma_muk: need 1 <= k <= depth");
  const unsigned p = K.prime(), d = K.dim();
  const unsigned Mk = K.schedule().M[k], Lk = K.schedule().L[k];
  const bool applicable = K.dual_radius(k - 1) <= Mk;
  const std::string na = "mu_" + std::to_string(k - 1) + "^ is supported up to p^" +
                         std::to_string(K.dual_radius(k - 1)) + " > p^M_k; the identity is not implied";

  if (!K.materialized(k)) {
    ClauseResult c = make_clause("mu-k 1,2,4");
    c.applicable = false;
    c.detail = "mu_" + std::to_string(k) + " not materialized";
    rep.clauses.push_back(c);
  } else {
    const StepDensity& D = K.mu(k).density();
    const StepDensity& P = K.mu(k - 1).density();
    {
      ClauseResult c = make_clause("mu-k 1");
      auto v = ft_point_exact(D, DualPoint::zero(p, d)).as_rational();
      c.points = 1;
      c.exhaustive = true;
      c.ok = v && *v == 1;
      c.detail = "mu_k^(0) = " + (v ? v->get_str() : std::string("irrational"));
      if (!applicable) {
        c.applicable = false;
        c.detail += "; " + na;
      }
      rep.clauses.push_back(c);
    }
    {
      ClauseResult c = make_clause("mu-k 2");
      bool exhaustive = false;
      auto shells = exact_shells(p, d, 1, Mk, D.size() + P.size(), opt, exhaustive);
      for (const auto& [l, pts] : shells)
        absorb(c, check_points(p, pts, l, [&](const std::vector<u64>& a, unsigned lev) {
                 const DualPoint s = DualPoint::from_numerators(p, a, lev);
                 return ft_point_exact(D, s) == ft_point_exact(P, s);
               }));
      c.exhaustive = exhaustive;
      if (!applicable) {
        c.applicable = false;
        c.detail = (c.ok ? "holds anyway; " : "fails (" + c.detail + "); ") + na;
      } else if (c.detail.empty()) {
        c.detail = std::string("mu_k^ = mu_{k-1}^ on 0 < |s| <= p^M_k") + (exhaustive ? "" : " (sampled shells)");
      }
      rep.clauses.push_back(c);
    }
    {
      ClauseResult c = make_clause("mu-k 4");
      const unsigned l = Lk + 1;
      const u64 refined = D.size() * ipow(p, d);
      if (!pow_fits(p, d * l) || refined > opt.exact_budget / 4) {
        c.applicable = false;
        c.detail = "refined density exceeds the exact budget";
      } else {
        const u64 count = std::max<u64>(1, std::min(opt.beyond_samples, opt.exact_budget / std::max<u64>(refined, 1)));
        auto pts = detail::sample_shell(p, d, l, count, detail::mix_seed(opt.seed, l, 43));
        absorb(c, check_points(p, pts, l, [&](const std::vector<u64>& a, unsigned) {
                 return refined_transform_is_zero(D, l, a);
               }));
        if (c.detail.empty()) c.detail = "|s| = p^(L_k+1) via the refined density";
      }
      rep.clauses.push_back(c);
    }
    if (K.dual_cache(k - 1) && K.has_fm(k)) {
      ClauseResult c = make_clause("convol");
      c.exact = false;
      double worst = 0;
      for (unsigned l = 0; l <= Lk + 1; ++l) {
        if (!pow_fits(p, d * l)) break;
        auto pts = detail::sample_shell(p, d, l, l == 0 ? 1 : 12, detail::mix_seed(opt.seed, l, 47));
        std::vector<double> err(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const DualPoint s = DualPoint::from_numerators(p, pts[i], l);
          err[i] = std::abs(ft_mu_recursive(K, k, s) - ft_point(D, s));
        });
        for (double e : err) worst = std::max(worst, e);
        c.points += pts.size();
      }
      c.ok = worst <= 1e-12;
      std::ostringstream os;
      os << "max |recursive - direct| = " << worst;
      c.detail = os.str();
      rep.clauses.push_back(c);
    }
  }

  {
    ClauseResult c = make_clause("mu-k 3");
    c.exact = false;
    try {
      const DecayProfile prof = decay_profile(K, k, opt);
      rep.constant = prof.window_ratio();
      for (const auto& sh : prof.shells) c.points += sh.points;
      std::ostringstream os;
      os.precision(6);
      os << "constant " << rep.constant << " over (p^M_k, p^L_k], evaluator " << prof.evaluator;
      c.detail = os.str();
    } catch (const SizeError& e) {
      c.applicable = false;
      c.detail = e.what();
    }
    rep.constant_label = K.params().mode == Mode::toy ? "non-theorem (toy schedule)" : "measured";
    rep.clauses.push_back(c);
  }
  return rep;
}

ClauseResult periodicity_check(const StepMeasure& mu, unsigned count, u64 seed) {
  ClauseResult c = make_clause("periodicity");
  const StepDensity& D = mu.density();
  const unsigned p = D.prime(), d = D.dim();
  std::vector<std::vector<PadicRational>> raw(count);
  std::vector<DualPoint> reduced;
  for (unsigned i = 0; i < count; ++i) {
    std::mt19937_64 rng(detail::mix_seed(seed, i, 59));
    const unsigned l = static_cast<unsigned>(rng() % (D.level() + 2));
    const BigInt side = big_pow(p, l);
    std::vector<PadicRational> s;
    for (unsigned a = 0; a < d; ++a) {
      const BigInt num = BigInt(static_cast<unsigned long>(rng() % 1'000'000)) % side;
      long zden = 1 + static_cast<long>(rng() % 10'000);
      while (zden % static_cast<long>(p) == 0) ++zden;
      const long znum = static_cast<long>(rng() % 2'000'001) - 1'000'000;
      BigRational sa(num, side), z(znum, zden);
      sa.canonicalize();
      z.canonicalize();
      s.emplace_back(p, sa);
      raw[i].emplace_back(p, sa + z);
    }
    reduced.emplace_back(p, s);
  }
  std::vector<char> ok(count, 1);
  parallel_for(count, [&](std::size_t i) {
    ok[i] = ft_point_exact(D, std::span<const PadicRational>(raw[i])) == ft_point_exact(D, reduced[i]);
  });
  c.points = count;
  for (unsigned i = 0; i < count; ++i)
    if (!ok[i]) {
      c.ok = false;
      c.detail = "mismatch at s = " + reduced[i].to_string();
      break;
    }
  if (c.ok) c.detail = "mu^(s + z) = mu^(s) exactly, |z|_p <= 1";
  return c;
}

}  // namespace padic

// Acceptance run: one PASS/FAIL line per criterion, then "acceptance: done".
// The exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "padic/analysis.hpp"
#include "padic/report.hpp"

using namespace padic;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

ConstructionParams scalar_params(unsigned p, BigRational tau) {
  ConstructionParams c;
  c.p = p;
  c.tau = tau;
  return c;
}

ConstructionParams toy(std::vector<unsigned> Ms, BigRational tau = BigRational(5, 2)) {
  ConstructionParams c = scalar_params(3, tau);
  c.mode = Mode::toy;
  c.depth = static_cast<unsigned>(Ms.size());
  c.m_list = std::move(Ms);
  return c;
}

ConstructionParams matrix_params(unsigned depth) {
  ConstructionParams c = scalar_params(3, BigRational(2));
  c.shape = Shape::mxn(2, 1);
  c.depth = depth;
  return c;
}

const ClauseResult* find(const LemmaReport& r, const std::string& name) {
  for (const auto& c : r.clauses)
    if (c.clause == name) return &c;
  return nullptr;
}

std::vector<DualPoint> all_points(unsigned p, unsigned d, unsigned level) {
  std::vector<DualPoint> pts;
  const CellLayout layout(p, d, level);
  for (u64 key = 0; key < layout.cell_count(); ++key) {
    auto a = layout.coords(key);
    pts.push_back(DualPoint::from_numerators(p, a, level));
  }
  return pts;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Shared faithful builds (criteria 5, 6 and 10).
const KaufmanMeasure& faithful_scalar() {
  static const KaufmanMeasure K(scalar_params(3, BigRational(5, 2)));
  return K;
}

Outcome criterion1() {
  Outcome o;
  u64 fm2 = 0, fm4 = 0;
  for (unsigned p : {3u, 5u})
    for (const BigRational& tau : {BigRational(5, 2), BigRational(3)})
      for (unsigned M : {1u, 2u}) {
        const LemmaReport r = verify_lemma_FM(scalar_params(p, tau), M);
        const ClauseResult *c1 = find(r, "FM1"), *c2 = find(r, "FM2"), *c4 = find(r, "FM4");
        const bool ok = c1 && c1->ok && c2 && c2->ok && c2->exhaustive && c4 && c4->applicable && c4->ok &&
                        c4->points >= 100;
        if (!ok) {
          o.pass = false;
          o.detail += " fails at p=" + std::to_string(p) + " tau=" + tau.get_str() + " M=" + std::to_string(M) + ";";
        }
        fm2 += c2 ? c2->points : 0;
        fm4 += c4 ? c4->points : 0;
      }
  o.detail += " FM2 exhaustive over " + std::to_string(fm2) + " points, FM4 on " + std::to_string(fm4) + " points";
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst_closed = 0, worst_table = 0;
  u64 points = 0;
  const ConstructionParams params = scalar_params(3, BigRational(5, 2));
  for (unsigned M : {1u, 2u}) {
    const FMData f(params, M);
    const StepDensity F = f.build();
    for (const DualPoint& s : all_points(3, 1, f.L())) {
      worst_closed = std::max(worst_closed, std::abs(f.ft(s) - brute_ft_oracle(F, s)));
      ++points;
    }
  }
  std::mt19937_64 rng(2024);
  for (unsigned trial = 0; trial < 12; ++trial) {
    const unsigned d = trial % 3 == 2 ? 2 : 1;
    const unsigned L = d == 1 ? 1 + trial % 5 : 1 + trial % 3;
    const CellLayout layout(3, d, L);
    std::vector<StepDensity::Cell> cells;
    for (u64 key = 0; key < layout.cell_count(); ++key)
      if (rng() % 3 != 0) cells.push_back({key, BigRational(static_cast<long>(1 + rng() % 50), 7)});
    const StepDensity f = StepDensity::from_cells(3, d, L, cells);
    const FourierTable t = ft_table(f);
    for (u64 key = 0; key < t.size(); ++key)
      worst_table = std::max(worst_table, std::abs(t.at(key) - ft_point(f, t.dual_point(key))));
  }
  o.pass = worst_closed <= 1e-12 && worst_table <= 1e-12;
  o.detail = "closed vs oracle " + num(worst_closed) + " over " + std::to_string(points) + " points; table vs point " +
             num(worst_table);
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0;
  u64 points = 0;
  for (auto Ms : {std::vector<unsigned>{1, 2}, std::vector<unsigned>{2, 3}}) {
    const KaufmanMeasure K(toy(Ms));
    for (unsigned k = 1; k <= 2; ++k) {
      if (!K.materialized(k) || !K.dual_cache(k - 1)) {
        o.pass = false;
        o.detail += " mu_" + std::to_string(k) + " unavailable;";
        continue;
      }
      for (const DualPoint& s : all_points(3, 1, K.schedule().L[k] + 1)) {
        worst = std::max(worst, std::abs(ft_mu_recursive(K, k, s) - ft_mu_direct(K, k, s)));
        ++points;
      }
    }
  }
  o.pass = o.pass && worst <= 1e-12;
  o.detail += " max |recursive - direct| = " + num(worst) + " over " + std::to_string(points) + " points";
  return o;
}

Outcome criterion4() {
  Outcome o;
  u64 instances = 0, rows = 0, iball = 0;
  for (const BigRational& tau : {BigRational(5, 2), BigRational(3)})
    for (unsigned M1 : {1u, 2u}) {
      // M_2 is the smallest level allowed by (Mk size 1), so the i-ball bound applies
      const ConstructionParams params = toy({M1, ceil_tau(tau, M1) + 1}, tau);
      const LevelSchedule s = choose_Mk(params);
      for (unsigned k : {1u, 2u}) {
        const CountingReport r = counting_checks(params, s, 1, k);
        instances += r.instances;
        rows += r.rows.size();
        for (const auto& row : r.rows) iball += row.lemma == "i-ball";
        if (!r.ok()) {
          o.pass = false;
          o.detail += " violation at tau=" + tau.get_str() + " M_1=" + std::to_string(M1) + ";";
        }
      }
    }
  if (iball != 8) {
    o.pass = false;
    o.detail += " i-ball rows missing;";
  }
  o.detail += " " + std::to_string(rows) + " bounds over " + std::to_string(instances) + " instances, zero violations required";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const KaufmanMeasure& K = faithful_scalar();
  const unsigned top = K.schedule().L[2];
  const RegularityReport r1 = regularity_scan(K, 1, top);
  const RegularityReport r2 = regularity_scan(K, 2, top);
  const double C = std::max(r1.C, r2.C);
  const double change = r2.C / r1.C;
  o.pass = std::isfinite(C) && C > 0 && r1.rows.size() == top + 1 && r2.rows.size() == top + 1 && change <= 2 &&
           change >= 0.5;
  o.detail = "C = " + num(C) + " (k=1: " + num(r1.C) + ", k=2: " + num(r2.C) + ") over 1 <= l <= " + std::to_string(top);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const DecayProfile ps = decay_profile(faithful_scalar(), 1);
  const DimEstimate es = fourier_dim_estimate(ps);
  const KaufmanMeasure Km(matrix_params(1));
  const DecayProfile pm = decay_profile(Km, 1);
  const DimEstimate em = fourier_dim_estimate(pm);
  const bool s_ok = std::abs(es.exponent_corrected - 0.4) <= 0.1;
  const bool m_ok = std::abs(em.exponent_corrected - 0.5) <= 0.15;
  o.pass = s_ok && m_ok;
  o.detail = "scalar exponent " + num(es.exponent_corrected) + " (raw " + num(es.exponent_raw) + ", target 0.4 +- 0.1" +
             (s_ok ? "" : ", out of range") + "); 2x1 exponent " + num(em.exponent_corrected) + " (raw " +
             num(em.exponent_raw) + ", target 0.5 +- 0.15" + (m_ok ? "" : ", out of range") + ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const ConstructionParams params = matrix_params(1);
  const LemmaReport r = verify_lemma_FM(params, 1);
  for (const char* name : {"FM1", "FM2", "FM4"}) {
    const ClauseResult* c = find(r, name);
    if (!c || !c->applicable || !c->ok) {
      o.pass = false;
      o.detail += std::string(" ") + name + " fails;";
    }
  }
  const FMData f(params, 1);
  const StepDensity F = f.build();
  double worst = 0;
  const auto pts = all_points(3, 2, 4);
  for (const DualPoint& s : pts) worst = std::max(worst, std::abs(f.ft(s) - brute_ft_oracle(F, s)));
  o.pass = o.pass && worst <= 1e-12;
  o.detail += " FM1/FM2/FM4 exact; closed vs oracle " + num(worst) + " over " + std::to_string(pts.size()) + " points";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const double limit = (1 - 1.0 / 3) / (1 - std::pow(3.0, -0.5));
  double prev = 0, err = 0;
  bool monotone = true;
  for (unsigned L = 1; L <= 8; ++L) {
    const EnergyReport e = riesz_energy(StepMeasure(refine(StepDensity::constant(3, 1, 1), L)), BigRational(1, 2));
    double analytic = std::pow(3.0, -double(L)) * std::pow(3.0, 0.5 * L);
    for (unsigned l = 0; l < L; ++l) analytic += (1 - 1.0 / 3) * std::pow(3.0, l * (0.5 - 1));
    if (L == 8) err = std::abs(e.spatial - analytic);
    monotone = monotone && e.spatial > prev && e.spatial < limit;
    prev = e.spatial;
  }
  o.pass = err <= 1e-10 && monotone;
  o.detail = "L=8 energy " + num(prev) + ", |error| " + num(err) + ", limit " + num(limit) +
             (monotone ? ", increasing toward the limit" : ", not monotone");
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<StepMeasure> measures;
  const KaufmanMeasure& K = faithful_scalar();
  for (unsigned k = 0; k <= K.materialized_depth(); ++k) measures.push_back(K.mu(k));
  const KaufmanMeasure T(toy({2, 6}));
  for (unsigned k = 0; k <= T.materialized_depth(); ++k) measures.push_back(T.mu(k));
  std::mt19937_64 rng(9);
  std::vector<StepDensity::Cell> cells;
  long total = 0;
  std::vector<long> w(81);
  for (auto& x : w) total += (x = static_cast<long>(rng() % 10));
  for (u64 key = 0; key < 81; ++key)
    if (w[key]) cells.push_back({key, BigRational(81 * w[key], total)});
  measures.emplace_back(StepDensity::from_cells(3, 1, 4, cells));
  for (const auto& mu : measures) {
    const RestrictionReport r = restriction_ratio(mu, BigRational(7, 5), {20, 3, 1});
    if (r.rows.front().ratio != 1.0) {
      o.pass = false;
      o.detail += " indicator ratio " + fmt17(r.rows.front().ratio) + ";";
    }
  }
  const bool endpoints = scalar_restriction_endpoint(BigRational(5, 2)) == BigRational(3, 2) &&
                         scalar_restriction_endpoint(BigRational(3)) == BigRational(4, 3) &&
                         restriction_endpoint(BigRational(1), BigRational(1, 2), 2) == BigRational(10, 9) &&
                         restriction_endpoint(BigRational(1, 3), BigRational(2, 3), 1) == BigRational(6, 5);
  if (!endpoints) o.detail += " endpoint formula mismatch;";
  o.pass = o.pass && endpoints;
  o.detail += " ratio 1 on " + std::to_string(measures.size()) + " probability measures; endpoint(5/2) = " +
              scalar_restriction_endpoint(BigRational(5, 2)).get_str();
  return o;
}

Outcome criterion10() {
  Outcome o;
  unsigned measures = 0;
  auto run = [&](const KaufmanMeasure& K, const std::string& name) {
    for (unsigned k = 0; k <= K.materialized_depth(); ++k) {
      ++measures;
      if (!periodicity_check(K.mu(k), 50, 10 + k).ok) {
        o.pass = false;
        o.detail += " " + name + " mu_" + std::to_string(k) + " fails;";
      }
    }
  };
  run(KaufmanMeasure(toy({1, 2})), "toy(1,2)");
  run(KaufmanMeasure(toy({2, 3})), "toy(2,3)");
  run(KaufmanMeasure(toy({2, 6})), "toy(2,6)");
  run(faithful_scalar(), "faithful");
  ConstructionParams m = matrix_params(1);
  m.mode = Mode::toy;
  m.m_list = {1};
  run(KaufmanMeasure(m), "2x1 toy(1)");
  o.detail += " 50 shifts z with |z|_p <= 1 on each of " + std::to_string(measures) + " built measures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact FM lemma suite", criterion1},
      {"oracle equivalence", criterion2},
      {"recursion identity", criterion3},
      {"counting theorems", criterion4},
      {"regularity constant", criterion5},
      {"decay exponent", criterion6},
      {"matrix identities", criterion7},
      {"Haar energy", criterion8},
      {"restriction sanity", criterion9},
      {"periodicity", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string(" threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " --"
              << (o.detail.starts_with(' ') ? "" : " ") << o.detail << " [" << num(secs) << " s]" << std::endl;
  }
  std::cout << "acceptance: done, " << criteria.size() - failed << "/" << criteria.size() << " passed" << std::endl;
  return failed;
}

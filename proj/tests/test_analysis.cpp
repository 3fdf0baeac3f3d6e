#include "doctest.h"

#include <cmath>
#include <sstream>

#include "padic/analysis.hpp"
#include "padic/report.hpp"

using namespace padic;

namespace {

ConstructionParams scalar(unsigned p = 3, BigRational tau = BigRational(5, 2)) {
  ConstructionParams c;
  c.p = p;
  c.tau = tau;
  return c;
}

ConstructionParams toy(std::vector<unsigned> Ms, BigRational tau = BigRational(5, 2)) {
  ConstructionParams c = scalar(3, tau);
  c.mode = Mode::toy;
  c.depth = static_cast<unsigned>(Ms.size());
  c.m_list = std::move(Ms);
  return c;
}

const ClauseResult& clause(const LemmaReport& r, const std::string& name) {
  for (const auto& c : r.clauses)
    if (c.clause == name) return c;
  FAIL("missing clause " << name);
  return r.clauses.front();
}

}  // namespace

TEST_CASE("FM lemma, p=3 M=1: FM2 over the two points of shell 1") {
  const LemmaReport r = verify_lemma_FM(scalar(), 1);
  CHECK(r.ok());
  CHECK(clause(r, "FM1").ok);
  const ClauseResult& fm2 = clause(r, "FM2");
  CHECK(fm2.exhaustive);
  CHECK(fm2.points == 2);
  CHECK(clause(r, "FM4").points >= 100);
  CHECK(clause(r, "phi").ok);
  CHECK(clause(r, "geometric").ok);
}

TEST_CASE("FM lemma, p=3 M=2: FM1 exact and a finite positive C_meas") {
  const LemmaReport r = verify_lemma_FM(scalar(), 2);
  CHECK(r.ok());
  CHECK(clause(r, "FM2").points == 8);
  CHECK(r.constant > 0);
  CHECK(std::isfinite(r.constant));
}

TEST_CASE("FM lemma, 2x1 matrix") {
  ConstructionParams c = scalar(3, BigRational(2));
  c.shape = Shape::mxn(2, 1);
  const LemmaReport r = verify_lemma_FM(c, 1);
  CHECK(r.ok());
  CHECK(clause(r, "FM2").points == 8);
  CHECK_FALSE(clause(r, "phi").applicable);
}

TEST_CASE("mu-k lemma on a toy schedule that meets (Mk size 1)") {
  KaufmanMeasure K(toy({2, 6}));
  REQUIRE(K.materialized_depth() == 2);
  SamplingOptions opt;
  opt.samples = 300;
  opt.shell_cap = 2000;
  for (unsigned k = 1; k <= 2; ++k) {
    const LemmaReport r = verify_lemma_muk(K, k, opt);
    CHECK(r.ok());
    CHECK(clause(r, "mu-k 1").applicable);
    CHECK(clause(r, "mu-k 2").applicable);
    CHECK(clause(r, "convol").ok);
    CHECK(r.constant_label == "non-theorem (toy schedule)");
  }
}

TEST_CASE("mu-k lemma: clauses outside their hypothesis are reported, not failed") {
  KaufmanMeasure K(toy({1, 2}));
  const LemmaReport r = verify_lemma_muk(K, 2);
  CHECK(r.ok());
  CHECK_FALSE(clause(r, "mu-k 2").applicable);
}

TEST_CASE("decay profile: low shells follow psi_0") {
  KaufmanMeasure K(toy({2, 6}));
  const DecayProfile prof = decay_profile(K, 1);
  REQUIRE(prof.shells.size() == K.schedule().L[1] + 1);
  CHECK(prof.shells[0].max_abs == doctest::Approx(1).epsilon(1e-12));
  CHECK(prof.shells[1].max_abs == doctest::Approx(1).epsilon(1e-12));
  CHECK(prof.shells[2].max_abs == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& sh : prof.shells) {
    CHECK(std::isfinite(sh.ratio));
    CHECK(sh.exhaustive);
  }
  const DecayProfile again = decay_profile(K, 1);
  for (std::size_t i = 0; i < prof.shells.size(); ++i) CHECK(prof.shells[i].max_abs == again.shells[i].max_abs);
}

TEST_CASE("decay profile: shells up to M_k equal psi_0^ on a faithful build") {
  KaufmanMeasure K(scalar());
  SamplingOptions opt;
  opt.samples = 200;
  const DecayProfile prof = decay_profile(K, 1, opt, 8);
  CHECK(prof.evaluator == "recursive");
  CHECK(prof.shells[1].max_abs == doctest::Approx(1).epsilon(1e-12));
  CHECK(prof.shells[2].max_abs == doctest::Approx(0.5).epsilon(1e-12));
  for (unsigned l = 3; l <= 7; ++l) CHECK(prof.shells[l].max_abs < 1e-13);
}

TEST_CASE("dimension estimate needs three nonzero shells") {
  DecayProfile prof;
  prof.p = 3;
  prof.M = 1;
  prof.L = 3;
  prof.beta = 0.4;
  for (unsigned l = 0; l <= 3; ++l) prof.shells.push_back({l, l == 3 ? 0.0 : 0.5, "", 1, true, 0});
  CHECK_THROWS_AS(fourier_dim_estimate(prof), std::invalid_argument);

  prof.L = 6;
  prof.shells.clear();
  for (unsigned l = 0; l <= 6; ++l) prof.shells.push_back({l, std::pow(3.0, -0.5 * l), "", 1, true, 0});
  const DimEstimate est = fourier_dim_estimate(prof);
  CHECK(est.shells.size() == 5);
  CHECK(est.exponent_raw == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(est.dim_raw == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("regularity: l = 0 and the finest level") {
  KaufmanMeasure K(toy({2, 6}));
  const RegularityReport rep = regularity_scan(K, 2);
  REQUIRE(rep.rows.size() == K.schedule().L[2] + 1);
  CHECK(rep.rows[0].max_mass == 1);
  CHECK(rep.rows[0].bound == 1);
  const StepDensity& D = K.mu(2).density();
  CHECK(rep.rows.back().max_mass == D.max_value() * D.cell_volume());
  CHECK(rep.C > 0);
  for (const auto& row : rep.rows) CHECK(row.exact);
  CHECK(rep.rows[3].case_tag == "trivial (l <= L_0)");
  CHECK(rep.rows[4].case_tag == "j=1: M_j < l <= 2M_j");
  CHECK(rep.rows[5].case_tag == "j=1: 2M_j < l <= L_j");
  CHECK(rep.rows[6].case_tag == "j=2: L_{j-1} < l <= M_j");
  CHECK(rep.rows[10].case_tag == "j=2: M_j < l <= 2M_j");
  CHECK(rep.rows[13].case_tag == "j=2: 2M_j < l <= L_j");
}

TEST_CASE("regularity of an implicit level agrees with mu_{k-1} up to M_k") {
  KaufmanMeasure K(scalar());
  REQUIRE(K.materialized_depth() == 1);
  const unsigned M2 = K.schedule().M[2];
  const RegularityReport r1 = regularity_scan(K, 1, M2);
  const RegularityReport r2 = regularity_scan(K, 2, K.schedule().L[2]);
  for (unsigned l = 0; l <= M2; ++l) {
    CHECK(r2.rows[l].exact);
    CHECK(r2.rows[l].max_mass == r1.rows[l].max_mass);
  }
  for (unsigned l = M2 + 1; l < r2.rows.size(); ++l) {
    CHECK(r2.rows[l].lo <= r2.rows[l].hi);
    CHECK(r2.rows[l].hi > 0);
  }
}

TEST_CASE("counting: disjoint balls for p=3, M=1 and J <= 1 past 2M") {
  KaufmanMeasure K(toy({1, 4}));
  const CountingReport rep = counting_checks(K.params(), K.schedule(), 1, 2);
  CHECK(rep.ok());
  bool saw_disjoint = false, saw_iball = false;
  for (const auto& row : rep.rows) {
    if (row.lemma == "disjoint balls") {
      saw_disjoint = true;
      CHECK(row.instances == 3);  // pairs among {0, 1/2, 1}
      CHECK(row.measured == 0);
    }
    if (row.lemma == "non-i-ball (a)" && row.ell >= 2) CHECK(row.measured <= 1);
    if (row.lemma == "i-ball") saw_iball = true;
  }
  CHECK(saw_disjoint);
  CHECK(saw_iball);
}

TEST_CASE("counting: the base step of the i-ball lemma") {
  KaufmanMeasure K(toy({2, 6}));
  const CountingReport rep = counting_checks(K.params(), K.schedule(), 1, 1);
  CHECK(rep.ok());
  for (const auto& row : rep.rows)
    if (row.lemma == "i-ball") CHECK(row.measured == 1);
}

TEST_CASE("counting: i-ball is skipped outside its hypothesis") {
  KaufmanMeasure K(toy({1, 2}));
  const CountingReport rep = counting_checks(K.params(), K.schedule(), 1, 2);
  CHECK(rep.ok());
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("Riesz energy of Haar measure matches the truncated series") {
  const BigRational alpha(1, 2);
  double prev = 0;
  for (unsigned L = 1; L <= 8; ++L) {
    StepMeasure haar(refine(StepDensity::constant(3, 1, 1), L));
    const EnergyReport e = riesz_energy(haar, alpha);
    double want = std::pow(3.0, -double(L)) * std::pow(3.0, 0.5 * L);
    for (unsigned l = 0; l < L; ++l) want += (1 - 1.0 / 3) * std::pow(3.0, l * (0.5 - 1));
    CHECK(e.spatial == doctest::Approx(want).epsilon(1e-12));
    CHECK(e.spatial > prev);
    CHECK(e.spatial < (1 - 1.0 / 3) / (1 - std::pow(3.0, -0.5)));
    prev = e.spatial;
  }
  CHECK_THROWS_AS(riesz_energy(StepMeasure(StepDensity::constant(3, 1, 1)), BigRational(1)), std::invalid_argument);
}

TEST_CASE("Riesz energy: small alpha tends to the squared mass; the Fourier side matches the table") {
  KaufmanMeasure K(toy({2, 6}));
  const StepMeasure& mu = K.mu(1);
  CHECK(riesz_energy(mu, BigRational(1, 100000)).spatial == doctest::Approx(1).epsilon(1e-3));

  const BigRational alpha(4, 5);
  const EnergyReport e = riesz_energy(mu, alpha);
  const FourierTable t = ft_table(mu.density());
  double direct = 0;
  for (u64 key = 1; key < t.size(); ++key) {
    const unsigned l = t.dual_point(key).level();
    direct += std::norm(t.at(key)) * std::pow(3.0, l * (0.8 - 1));
  }
  CHECK(e.fourier == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("restriction: the indicator of Z_p gives exactly 1") {
  KaufmanMeasure K(toy({2, 6}));
  for (unsigned k = 0; k <= 2; ++k) {
    const RestrictionReport rep = restriction_ratio(K.mu(k), BigRational(7, 5), {20, 3, 5});
    CHECK(rep.rows[0].ratio == 1.0);
    CHECK(rep.max_ratio >= 1.0);
    for (const auto& row : rep.rows) CHECK(std::isfinite(row.ratio));
  }
  CHECK_THROWS_AS(restriction_ratio(K.mu(1), BigRational(1, 2)), std::invalid_argument);
}

TEST_CASE("restriction endpoints") {
  CHECK(scalar_restriction_endpoint(BigRational(5, 2)) == BigRational(3, 2));
  CHECK(scalar_restriction_endpoint(BigRational(3)) == BigRational(4, 3));
  // d = 2, alpha = 1, beta = 1/2: 1 + (1/2) / (8 - 4 + 1/2)
  CHECK(restriction_endpoint(BigRational(1), BigRational(1, 2), 2) == BigRational(10, 9));
}

TEST_CASE("periodicity holds exactly on toy measures") {
  KaufmanMeasure K(toy({2, 3}));
  for (unsigned k = 0; k <= K.materialized_depth(); ++k) CHECK(periodicity_check(K.mu(k), 20, 3).ok);
}

TEST_CASE("reports: 17 digits, stable manifest hash, CSV header") {
  CHECK(fmt17(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt17(1.0 / 3)) == 1.0 / 3);
  KaufmanMeasure K(toy({1, 2}));
  const Json cfg = {{"command", "build"}, {"seed", 1}};
  const std::string h1 = manifest_hash(manifest_json(K, cfg));
  const std::string h2 = manifest_hash(manifest_json(K, cfg));
  CHECK(h1 == h2);
  CHECK(h1.size() == 16);
  CHECK(h1 != manifest_hash(manifest_json(K, Json{{"command", "build"}, {"seed", 2}})));
  std::ostringstream os;
  write_decay_csv(os, decay_profile(K, 1), h1);
  CHECK(os.str().rfind("# manifest " + h1 + "\n", 0) == 0);
}

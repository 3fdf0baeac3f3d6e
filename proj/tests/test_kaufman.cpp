#include "doctest.h"

#include "padic/kaufman.hpp"

using namespace padic;

namespace {

ConstructionParams toy(std::vector<unsigned> Ms, unsigned p = 3, BigRational tau = BigRational(5, 2)) {
  ConstructionParams c;
  c.p = p;
  c.tau = tau;
  c.mode = Mode::toy;
  c.depth = static_cast<unsigned>(Ms.size());
  c.m_list = std::move(Ms);
  return c;
}

bool support_nested(const StepDensity& fine, const StepDensity& coarse) {
  for (const auto& [key, v] : fine.cells())
    if (coarse.value_at(fine.layout().ancestor(key, coarse.level())) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("toy builds: recursion equals the direct transform") {
  for (auto Ms : {std::vector<unsigned>{1, 2}, std::vector<unsigned>{2, 3}}) {
    KaufmanMeasure K(toy(Ms));
    REQUIRE(K.materialized_depth() == 2);
    for (unsigned k = 1; k <= 2; ++k) {
      CHECK(support_nested(K.mu(k).density(), K.mu(k - 1).density()));
      const unsigned top = K.schedule().L[k] + 1;
      for (u64 a = 0; a < ipow(3, top); ++a) {
        DualPoint s = DualPoint::from_numerators(3, std::vector<u64>{a}, top);
        CHECK(std::abs(ft_mu_recursive(K, k, s) - ft_mu_direct(K, k, s)) < 1e-12);
      }
    }
  }
}

TEST_CASE("toy (1, 2) collapses, (2, 3) is a probability measure") {
  KaufmanMeasure degenerate(toy({1, 2}));
  // F_1 lives on 0, 14, 1 mod 27, psi_0 on |x|_3 = 1/3
  CHECK(degenerate.mu(1).density().size() == 0);
  KaufmanMeasure K(toy({2, 3}));
  CHECK(K.mu(1).total_mass() == 1);
  // L_1 = 5 > M_2 = 3: the level-2 balls miss supp mu_1 entirely
  CHECK(K.mu(2).total_mass() == 0);
  // mu_1 support = cells of F_2 whose level-2 ancestor is 3 or 6
  std::size_t count = 0;
  for (const auto& [key, v] : K.fm_density(1).cells())
    if (key % 9 == 3 || key % 9 == 6) ++count;
  CHECK(K.mu(1).density().size() == count);
}

TEST_CASE("well-approximation witnesses") {
  KaufmanMeasure K(toy({2, 3}));
  for (unsigned k = 1; k <= 2; ++k) {
    WellApproxReport r = support_wellapprox_check(K, k);
    CHECK(r.ok);
    CHECK(r.cells_checked == K.mu(k).density().size());
    CHECK(r.witnesses_found == k * r.cells_checked);
  }
  ConstructionParams c = toy({1});
  c.shape = Shape::mxn(2, 1);
  c.tau = 2;
  KaufmanMeasure M(c);
  WellApproxReport r = support_wellapprox_check(M, 1);
  CHECK(r.ok);
  CHECK(r.cells_checked == 9);
}

TEST_CASE("faithful scalar build") {
  ConstructionParams c;
  KaufmanMeasure K(c);
  CHECK(K.schedule().M == std::vector<unsigned>{1, 7, 37});
  CHECK(K.materialized_depth() == 1);
  CHECK(!K.has_fm(2));
  CHECK(K.mu(1).total_mass() == 1);
  CHECK(K.dual_cache(0) != nullptr);
  CHECK(K.dual_cache(1) == nullptr);
  CHECK(!K.notes().empty());
  // shell 1 equals psi_0^, shell 8 via the recursion agrees with ft_point
  DualPoint s1 = DualPoint::from_numerators(3, std::vector<u64>{2}, 1);
  CHECK(std::abs(ft_mu_recursive(K, 1, s1) - 1.0) < 1e-12);
  for (u64 a : {1ull, 5ull, 100ull, 2000ull}) {
    DualPoint s = DualPoint::from_numerators(3, std::vector<u64>{a}, 8);
    CHECK(std::abs(ft_mu_recursive(K, 1, s) - ft_mu_direct(K, 1, s)) < 1e-12);
  }
}

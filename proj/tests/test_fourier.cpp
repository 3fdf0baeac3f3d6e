#include "doctest.h"

#include <random>
#include <sstream>

#include "padic/fourier.hpp"

using namespace padic;

namespace {

StepDensity random_density(std::mt19937_64& rng, unsigned p, unsigned d, unsigned L, int n = 15) {
  CellLayout layout(p, d, L);
  std::uniform_int_distribution<u64> key(0, layout.cell_count() - 1);
  std::uniform_int_distribution<long> val(1, 9);
  std::vector<StepDensity::Cell> cells;
  for (int i = 0; i < n; ++i) cells.emplace_back(key(rng), BigRational(val(rng), val(rng)));
  return StepDensity::from_cells(p, d, L, cells);
}

DualPoint random_dual(std::mt19937_64& rng, unsigned p, unsigned d, unsigned level) {
  std::uniform_int_distribution<u64> a(0, ipow(p, level) - 1);
  std::vector<u64> num(d);
  for (auto& x : num) x = a(rng);
  return DualPoint::from_numerators(p, num, level);
}

DualPoint dual1(unsigned p, long a, long b) { return DualPoint(p, {PadicRational(p, a, b)}); }

}  // namespace

TEST_CASE("dual points") {
  DualPoint s = dual1(3, 1, 18);  // reduces to 5/9
  CHECK(s.coords()[0].value() == BigRational(5, 9));
  CHECK(s.level() == 2);
  CHECK(s.abs_p() == 9);
  CHECK(s.numerators(3) == std::vector<u64>{15});
  CHECK(DualPoint::zero(3, 2).is_zero());
  CHECK((s - s).is_zero());
  CHECK(s.coord_string(0) == "5/3^2");
}

TEST_CASE("ball indicator closed form") {
  std::vector<PadicRational> zero{PadicRational(3, 0)};
  ScaledPhase a = ft_ball_indicator(zero, 0, DualPoint::zero(3, 1));
  CHECK(a.scale == 1);
  CHECK(a.phase.is_identity());
  CHECK(ft_ball_indicator(zero, 0, dual1(3, 1, 3)).is_zero());
  // B(2, 1/3) at s = 1/3
  std::vector<PadicRational> two{PadicRational(3, 2)};
  ScaledPhase b = ft_ball_indicator(two, 1, dual1(3, 1, 3));
  CHECK(b.scale == BigRational(1, 3));
  CHECK(b.phase == UnitRootPhase(3, BigInt(2), 1));
}

TEST_CASE("point transforms") {
  StepDensity psi = StepDensity::from_cells(3, 1, 2, {{3, BigRational(9, 2)}, {6, BigRational(9, 2)}});
  CHECK(ft_point_exact(psi, DualPoint::zero(3, 1)).as_rational() == BigRational(1));
  CHECK(ft_point_exact(psi, dual1(3, 1, 3)).as_rational() == BigRational(1));
  CHECK(ft_point_exact(psi, dual1(3, 1, 9)).as_rational() == BigRational(-1, 2));
  CHECK(ft_point_exact(psi, dual1(3, 1, 27)).is_zero());
  CHECK(std::abs(ft_point(psi, dual1(3, 4, 9)) + 0.5) < 1e-15);
  StepDensity ball = StepDensity::from_cells(3, 1, 1, {{0, 3}});
  CHECK(ft_point(ball, dual1(3, 1, 9)) == 0.0);
  CHECK(ft_point_exact(ball, dual1(3, 2, 3)).as_rational() == BigRational(1));
}

TEST_CASE("brute oracle agrees with ft_point") {
  std::mt19937_64 rng(17);
  for (unsigned L = 0; L <= 5; ++L) {
    StepDensity f = random_density(rng, 3, 1, L);
    CHECK(std::abs(brute_ft_oracle(f, DualPoint::zero(3, 1)) - f.haar_integral().get_d()) < 1e-12);
    for (int it = 0; it < 20; ++it) {
      DualPoint s = random_dual(rng, 3, 1, L + 1);
      CHECK(std::abs(brute_ft_oracle(f, s) - ft_point(f, s)) < 1e-12);
      CHECK(std::abs(ft_point_exact(f, s).to_complex() - ft_point(f, s)) < 1e-12);
    }
  }
  StepDensity single = StepDensity::from_cells(5, 1, 2, {{7, 25}});
  DualPoint s = dual1(5, 3, 25);
  CHECK(std::abs(brute_ft_oracle(single, s) - unit_root(21, 25)) < 1e-12);
}

TEST_CASE("tables") {
  FourierTable one = ft_table(StepDensity::constant(3, 1, 1));
  CHECK(one.size() == 1);
  FourierTable flat = ft_table(refine(StepDensity::constant(3, 2, 1), 2));
  CHECK(std::abs(flat.at(0) - 1.0) < 1e-14);
  for (u64 k = 1; k < flat.size(); ++k) CHECK(std::abs(flat.at(k)) < 1e-14);

  std::mt19937_64 rng(23);
  for (unsigned d : {1u, 2u}) {
    for (unsigned L = 1; L <= (d == 1 ? 5u : 3u); ++L) {
      for (unsigned p : {2u, 3u, 5u}) {
        if (d == 2 && p == 5 && L == 3) continue;
        StepDensity f = random_density(rng, p, d, L, 20);
        FourierTable t = ft_table(f);
        double energy = 0, cells = 0;
        for (std::size_t i = 0; i < f.size(); ++i) cells += f.approx_values()[i] * f.approx_values()[i];
        for (u64 key = 0; key < t.size(); ++key) {
          DualPoint s = t.dual_point(key);
          CHECK(std::abs(t.at(key) - ft_point(f, s)) < 1e-12);
          CHECK(std::abs(t.at(-s) - std::conj(t.at(key))) < 1e-12);
          energy += std::norm(t.at(key));
        }
        CHECK(std::abs(cells * f.cell_volume().get_d() - energy) < 1e-10);
        std::vector<std::complex<double>> back = inverse_ft_table(t);
        for (u64 key = 0; key < back.size(); ++key)
          CHECK(std::abs(back[key] - f.value_at(key).get_d()) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(ft_table(StepDensity::from_cells(3, 2, 6, {{0, 1}}), 1000), SizeError);
}

TEST_CASE("periodicity and cutoff") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> z(-50, 50), zd(1, 40);
  for (int it = 0; it < 20; ++it) {
    StepDensity f = random_density(rng, 3, 1, 3);
    DualPoint s = random_dual(rng, 3, 1, 3);
    long den = zd(rng);
    while (den % 3 == 0) ++den;
    std::vector<PadicRational> shifted{s.coords()[0] + PadicRational(3, z(rng), den)};
    CHECK(ft_point_exact(f, shifted) == ft_point_exact(f, s));
    DualPoint far = random_dual(rng, 3, 1, 5);
    if (far.level() > 3) {
      CHECK(ft_point(f, far) == 0.0);
      std::vector<PadicRational> raw{far.coords()[0]};
      CHECK(ft_point_exact(f, raw).is_zero());
    }
  }
}

TEST_CASE("csv export") {
  StepDensity f = StepDensity::from_cells(3, 1, 1, {{1, 3}});
  std::ostringstream os;
  ft_table(f).write_csv(os);
  std::string text = os.str();
  CHECK(text.rfind("s1,re,im,abs,abs_s\n0/3^0,1,0,1,0\n1/3^1,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

#include "doctest.h"

#include <random>
#include <sstream>

#include "padic/stepfn.hpp"

using namespace padic;

namespace {

StepDensity psi0_p3() {
  return StepDensity::from_cells(3, 1, 2, {{3, BigRational(9, 2)}, {6, BigRational(9, 2)}});
}

StepDensity random_density(std::mt19937_64& rng, unsigned p, unsigned d, unsigned L) {
  CellLayout layout(p, d, L);
  std::uniform_int_distribution<u64> key(0, layout.cell_count() - 1);
  std::uniform_int_distribution<long> val(0, 7);
  std::vector<StepDensity::Cell> cells;
  for (int i = 0; i < 12; ++i) cells.emplace_back(key(rng), BigRational(val(rng), 1 + val(rng)));
  return StepDensity::from_cells(p, d, L, cells);
}

}  // namespace

TEST_CASE("cell layout") {
  CellLayout l(3, 2, 2);
  CHECK(l.side() == 9);
  CHECK(l.cell_count() == 81);
  std::vector<u64> c{4, 7};
  u64 k = l.key(c);
  CHECK(l.coords(k) == c);
  CHECK(l.coord(k, 1) == 7);
  // ancestor at level 1: (4 mod 3, 7 mod 3) = (1, 1) -> 1 + 3*1
  CHECK(l.ancestor(k, 1) == 4);
  CHECK_THROWS_AS(CellLayout(3, 1, 60), SizeError);
}

TEST_CASE("refine") {
  StepDensity one = StepDensity::constant(3, 1, 1);
  StepDensity r = refine(one, 1);
  CHECK(r.size() == 3);
  for (const auto& c : r.cells()) CHECK(c.second == 1);
  CHECK(refine(one, 0) == one);
  StepDensity psi = psi0_p3();
  for (unsigned L = 2; L <= 5; ++L) CHECK(refine(psi, L).haar_integral() == 1);
  CHECK_THROWS(refine(psi, 1));
}

TEST_CASE("multiply") {
  StepDensity psi = psi0_p3();
  CHECK(multiply(psi, StepDensity::constant(3, 1, 1)) == psi);
  StepDensity other = StepDensity::from_cells(3, 1, 2, {{1, 5}, {4, 2}});
  CHECK(multiply(psi, other).size() == 0);
  CHECK_THROWS(multiply(psi, StepDensity::constant(5, 1, 1)));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    StepDensity a = random_density(rng, 3, 1, 2), b = random_density(rng, 3, 1, 3), c = random_density(rng, 3, 1, 1);
    CHECK(multiply(a, b) == multiply(b, a));
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    // pointwise at the finer level
    StepDensity ab = multiply(a, b), ar = refine(a, 3);
    for (u64 key = 0; key < 27; ++key) CHECK(ab.value_at(key) == ar.value_at(key) * b.value_at(key));
  }
}

TEST_CASE("ball masses") {
  StepMeasure mu(psi0_p3());
  std::vector<PadicRational> zero{PadicRational(3, 0)};
  CHECK(ball_mass(mu, zero, 0) == 1);
  CHECK(ball_mass(mu, zero, 1) == 1);
  CHECK(ball_mass(mu, zero, 2) == 0);
  std::vector<PadicRational> x{PadicRational(3, 3)};
  CHECK(ball_mass(mu, x, 2) == BigRational(1, 2));
  std::vector<PadicRational> half{PadicRational(3, 1, 2)};
  CHECK(ball_mass(mu, half, 1) == 0);
  std::vector<PadicRational> out{PadicRational(3, 1, 3)};
  CHECK(ball_mass(mu, out, 0) == 0);
  CHECK_THROWS_AS(ball_mass(mu, zero, 3), ResolutionError);

  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    StepMeasure m(random_density(rng, 3, 2, 3));
    for (unsigned l = 0; l <= 3; ++l) {
      BigRational total = 0;
      for (const auto& [key, mass] : ball_masses(m, l)) total += mass;
      CHECK(total == m.total_mass());
      // nested balls: a ball's mass is the sum of its children
      if (l < 3)
        for (const auto& [key, mass] : ball_masses(m, l)) {
          BigRational kids = 0;
          CellLayout coarse(3, 2, l), fine(3, 2, l + 1);
          for (const auto& [ck, cm] : ball_masses(m, l + 1))
            if (fine.ancestor(ck, l) == key) kids += cm;
          CHECK(kids == mass);
        }
    }
  }
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 10; ++it) {
    StepDensity f = random_density(rng, 5, 2, 2);
    std::stringstream ss;
    write_density(ss, f);
    StepDensity g = read_density(ss);
    CHECK(f == g);
    std::stringstream again;
    write_density(again, g);
    std::stringstream first;
    write_density(first, f);
    CHECK(first.str() == again.str());
  }
}

#include "doctest.h"

#include <random>

#include "padic/core.hpp"

using namespace padic;

TEST_CASE("valuation") {
  CHECK(valuation(PadicRational(3, 18)).value() == 2);
  CHECK(valuation(PadicRational(3, 5, 9)).value() == -2);
  CHECK(valuation(PadicRational(3, 0)).is_infinite());
  CHECK(Valuation(4) < Valuation::infinity());
  CHECK(PadicRational(3, 5, 9).abs_p() == BigRational(9));
  CHECK(PadicRational(3, 0).abs_p() == 0);
  CHECK_THROWS(PadicRational(4, 1));
}

TEST_CASE("fractional part") {
  CHECK(frac_part(PadicRational(3, 5, 9)).value() == BigRational(5, 9));
  CHECK(frac_part(PadicRational(3, 7, 2)).value() == 0);
  // 2^-1 = 5 mod 9
  CHECK(frac_part(PadicRational(3, 1, 18)).value() == BigRational(5, 9));
  CHECK(frac_part(PadicRational(3, -1, 3)).value() == BigRational(2, 3));
  CHECK(int_part(PadicRational(3, 1, 18)).is_integral());
}

TEST_CASE("character phases") {
  UnitRootPhase zero = char_phase(PadicRational(3, 0));
  CHECK(zero.is_identity());
  CHECK(zero.level() == 0);
  UnitRootPhase a = char_phase(PadicRational(3, 5, 9));
  CHECK(a.index() == 5);
  CHECK(a.level() == 2);
  UnitRootPhase b = char_phase(PadicRational(3, 1, 18));
  CHECK(b == a);
  CHECK((a * a.inverse()).is_identity());
  // 3/9 reduces to 1/3
  UnitRootPhase c(3, BigInt(3), 2);
  CHECK(c.index() == 1);
  CHECK(c.level() == 1);
  CHECK(std::abs(c.to_complex() - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);
}

TEST_CASE("residues") {
  CHECK(residue_mod(PadicRational(3, 1, 2), 2) == 5);
  CHECK(residue_mod(PadicRational(3, -1), 2) == 8);
  CHECK_THROWS(residue_mod(PadicRational(3, 1, 3), 1));
}

TEST_CASE("properties on random rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-2000, 2000), den(1, 2000);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int it = 0; it < 300; ++it) {
      PadicRational x(p, num(rng), den(rng)), y(p, num(rng), den(rng));
      // ultrametric, equality when the norms differ
      BigRational nx = x.abs_p(), ny = y.abs_p(), nd = (x - y).abs_p();
      CHECK(nd <= std::max(nx, ny));
      if (nx != ny) CHECK(nd == std::max(nx, ny));
      CHECK((x * y).abs_p() == nx * ny);
      PadicRational f = frac_part(x);
      CHECK(f.value() >= 0);
      CHECK(f.value() < 1);
      CHECK((x - f).is_integral());
      CHECK(char_phase(x) * char_phase(y) == char_phase(x + y));
      if (x.value().get_den() == 1 && !x.is_zero())
        CHECK(x.abs_p() >= BigRational(1) / abs(x.value()));
    }
  }
}

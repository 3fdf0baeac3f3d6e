#include "doctest.h"

#include "padic/cyclotomic.hpp"

using namespace padic;

TEST_CASE("sum of all p^l-th roots vanishes") {
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned l = 1; l <= 3; ++l) {
      CyclotomicSum s(p, l);
      for (u64 k = 0; k < ipow(p, l); ++k) s.add_term(k, 1);
      CHECK(s.is_zero());
      CHECK(std::abs(s.to_complex()) < 1e-12);
    }
}

TEST_CASE("canonical form identifies equal elements") {
  // 1 + zeta_3 = -zeta_3^2
  CyclotomicSum a(3, 1), b(3, 1);
  a.add_term(0, 1);
  a.add_term(1, 1);
  b.add_term(2, -1);
  CHECK(a == b);
  // lifting: zeta_3 = zeta_9^3
  CyclotomicSum c(3, 2);
  c.add_term(3, 1);
  CyclotomicSum d(3, 1);
  d.add_term(1, 1);
  CHECK(c == d);
  CHECK(!(c == a));
  CHECK(CyclotomicSum::rational(3, BigRational(1, 2)).as_rational() == BigRational(1, 2));
  CHECK(!d.as_rational().has_value());
}

TEST_CASE("products") {
  CyclotomicSum z(5, 1);
  z.add_term(1, 1);
  CyclotomicSum acc = CyclotomicSum::rational(5, 1);
  for (int i = 0; i < 5; ++i) acc = acc * z;
  CHECK(acc == CyclotomicSum::rational(5, 1));
  // (1 - zeta)(1 + zeta + ... + zeta^{p-1}) = 1 - zeta^p
  CyclotomicSum g(3, 2), one_minus(3, 2), rhs(3, 2);
  for (u64 r = 0; r < 3; ++r) g.add_term(r * 2, 1);
  one_minus.add_term(0, 1);
  one_minus.add_term(2, -1);
  rhs.add_term(0, 1);
  rhs.add_term(6, -1);
  CHECK(g * one_minus == rhs);
}

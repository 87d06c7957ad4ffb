#include <catch2/catch_amalgamated.hpp>

#include "padiclab/iwasawa.hpp"
#include "padiclab/rng.hpp"

using namespace padiclab;

TEST_CASE("Iwasawa ring arithmetic and a-adic valuation") {
  PadicContext ctx(3, 8);
  CoeffRing R(ctx, 1, 6);
  RingElt T = RingElt::variable(R, 1);
  RingElt p = RingElt::constant(R, ctx.p);
  RingElt one = RingElt::one(R);

  CHECK((p * T).aval() == 2);
  CHECK((p * p + T * T * T).aval() == 2);
  CHECK(one.aval() == 0);
  CHECK(RingElt::zero(R).aval() >= kInfPrec);

  RingElt x = one + T;
  RingElt y = one - T;
  RingElt prod = x * y;
  CHECK(equal_at_common_precision(prod, one - T * T));
  CHECK(prod.tail_aval() >= kInfPrec);  // no drops at degree 2

  // (1+T)^7 truncates above degree 6 and records the dropped tail
  RingElt pw = x.pow(7);
  CHECK(pw.tail_aval() == 7);
  CHECK(pw.coeff({6, 0}).exact_value() == 7);
}

TEST_CASE("specialization respects truncation certificates") {
  PadicContext ctx(3, 8);
  CoeffRing R(ctx, 1, 4);
  RingElt T = RingElt::variable(R, 1);
  RingElt x = RingElt::one(R) + T;

  Padic t = Padic::exact(ctx, ctx.p);
  Padic v = x.specialize({t});
  CHECK(v.is_exact());
  CHECK(v.exact_value() == 1 + ctx.p);

  // degree-5 power drops T^5: specialized value only certified mod p^5
  RingElt pw = x.pow(5);
  Padic w = pw.specialize({t});
  CHECK(w.precision() == 5);
  mpz_class full = 1;
  for (int i = 0; i < 5; ++i) full *= (1 + ctx.p);
  CHECK((w - Padic::exact(ctx, full)).is_zero());

  CHECK_THROWS_AS(x.specialize({Padic::one(ctx)}), domain_error);  // v_p(t) = 0
}

TEST_CASE("two-variable ring") {
  PadicContext ctx(5, 6);
  CoeffRing R(ctx, 2, 3);
  RingElt T1 = RingElt::variable(R, 1);
  RingElt T2 = RingElt::variable(R, 2);
  RingElt e = T1 * T2 + RingElt::constant(R, 25);
  CHECK(e.aval() == 2);
  Padic v = e.specialize({Padic::exact(ctx, 5), Padic::exact(ctx, 10)});
  CHECK(v.exact_value() == 75);
}

TEST_CASE("residue ring R/a^m is exact") {
  PadicContext ctx(3, 8);
  CoeffRing R(ctx, 1, 6);
  RingElt T = RingElt::variable(R, 1);
  RingElt x = RingElt::one(R) + T;

  ResidueElt a = ResidueElt::from_ring_elt(x, 3);
  ResidueElt b = ResidueElt::from_ring_elt(RingElt::one(R) - T, 3);
  ResidueElt prod = a * b;
  ResidueElt expect = ResidueElt::from_ring_elt(RingElt::one(R) - T * T, 3);
  CHECK(prod == expect);

  // exponent: p^m kills R/a^m
  ResidueElt killed = mpz_class(27) * a;
  CHECK(killed.is_zero());
  ResidueElt notkilled = mpz_class(9) * a;
  CHECK_FALSE(notkilled.is_zero());

  // exact division by p shifts the level
  ResidueElt tripled = mpz_class(3) * a;
  ResidueElt back = tripled.divide_p_power(1);
  CHECK(back == ResidueElt::from_ring_elt(x, 2));
}

TEST_CASE("residue ring generators enumerate the cyclic decomposition") {
  PadicContext ctx(3, 8);
  CoeffRing Qp = CoeffRing::qp(ctx);
  auto g0 = residue_ring_generators(Qp, 2);
  REQUIRE(g0.size() == 1);
  CHECK(g0[0].second == 2);

  CoeffRing R1(ctx, 1, 6);
  auto g1 = residue_ring_generators(R1, 3);  // 1, T, T^2 with levels 3,2,1
  REQUIRE(g1.size() == 3);
  CHECK(g1[0].second == 3);
  CHECK(g1[2].second == 1);

  CoeffRing R2(ctx, 2, 6);
  auto g2 = residue_ring_generators(R2, 2);  // 1 (level 2), T1, T2 (level 1)
  CHECK(g2.size() == 3);
}

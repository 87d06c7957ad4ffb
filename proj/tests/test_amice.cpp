#include <catch2/catch_amalgamated.hpp>

#include "padiclab/amice.hpp"
#include "padiclab/rng.hpp"

using namespace padiclab;

namespace {

std::vector<RingElt> sample_exact(const CoeffRing& R, const std::vector<long>& vals) {
  std::vector<RingElt> out;
  for (long v : vals) out.push_back(RingElt::constant(R, v));
  return out;
}

MonoidMatrix random_delta0(SuiteRng& rng, long p) {
  while (true) {
    MonoidMatrix g(rng.range(-9, 9), rng.range(-9, 9), p * rng.range(-3, 3), rng.range(-9, 9));
    if (g.in_delta0(p)) return g;
  }
}

}  // namespace

TEST_CASE("restriction scale") {
  PadicContext ctx(3, 8);
  CHECK(restriction_scale(0, 1, ctx) == 1);
  CHECK(restriction_scale(3, 1, ctx) == 6);  // 3!/1!
  mpz_class f9, f3;
  mpz_fac_ui(f9.get_mpz_t(), 9);
  mpz_fac_ui(f3.get_mpz_t(), 3);
  CHECK(restriction_scale(9, 1, ctx) == f9 / f3);  // 9!/3!, v_3 = 3
  CHECK(restriction_scale_vp(9, 1, ctx) == 3);
  // v_p(lambda_j) grows linearly
  for (long j = 0; j < 60; j += 5)
    CHECK(restriction_scale_vp(j, 1, ctx) == detail::vp(restriction_scale(j, 1, ctx), 3));
}

TEST_CASE("amice_from_values basics") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);

  // constant 1
  AmiceFunction one = amice_from_values(sample_exact(R, {1, 1, 1, 1, 1}), 0, R);
  CHECK(one.coeffs[0].coeff({0, 0}).exact_value() == 1);
  for (int j = 1; j < 5; ++j) CHECK(one.coeffs[static_cast<size_t>(j)].is_zero());

  // f(x) = x at s = 0: e_1^0(x) = x, so c_1 = 1
  AmiceFunction id = amice_from_values(sample_exact(R, {0, 1, 2, 3, 4}), 0, R);
  CHECK(id.coeffs[0].is_zero());
  CHECK(id.coeffs[1].coeff({0, 0}).exact_value() == 1);
  for (int j = 2; j < 5; ++j) CHECK(id.coeffs[static_cast<size_t>(j)].is_zero());

  // f = e_3^1 for p = 3: unit vector at j = 3
  std::vector<RingElt> vals;
  for (long x = 0; x < 7; ++x)
    vals.push_back(RingElt::from_scalar(R, amice_basis_at(ctx, 3, 1, mpq_class(x))));
  AmiceFunction e31 = amice_from_values(vals, 1, R);
  for (int j = 0; j < 7; ++j) {
    if (j == 3)
      CHECK(e31.coeffs[3].coeff({0, 0}).exact_value() == 1);
    else
      CHECK(e31.coeffs[static_cast<size_t>(j)].is_zero());
  }
}

TEST_CASE("eval examples") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);
  AmiceFunction one = AmiceFunction::constant(R, 1, RingElt::one(R), 6);
  CHECK(amice_eval(one, Padic::exact(ctx, 17)).coeff({0, 0}).exact_value() == 1);
  for (long j = 1; j < 6; ++j) {
    AmiceFunction ej = AmiceFunction::basis_vector(R, 1, j, 6);
    CHECK(amice_eval(ej, Padic::exact(ctx, 0)).is_zero());  // binom(0, j) = 0
  }
}

TEST_CASE("round trip eval after amice_from_values") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);
  SuiteRng rng(4);
  for (int it = 0; it < 20; ++it) {
    long J = rng.range(3, 12);
    long s = rng.range(0, 2);
    std::vector<RingElt> vals;
    for (long i = 0; i < J; ++i) vals.push_back(RingElt::from_scalar(R, rng.integer(ctx)));
    AmiceFunction f = amice_from_values(vals, s, R);
    for (long x = 0; x < J; ++x) {
      RingElt back = amice_eval(f, Padic::exact(ctx, x));
      CHECK(equal_at_common_precision(back, vals[static_cast<size_t>(x)]));
    }
  }
}

TEST_CASE("orthonormality: integral values give integral coefficients") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);
  SuiteRng rng(14);
  for (int it = 0; it < 20; ++it) {
    long J = rng.range(3, 14);
    long s = rng.range(0, 2);
    std::vector<RingElt> vals;
    for (long i = 0; i < J; ++i) vals.push_back(RingElt::from_scalar(R, rng.integer(ctx)));
    AmiceFunction f = amice_from_values(vals, s, R);
    CHECK(f.integral());
  }
  // and e_j^s stays integral on Z_p + p^s Z_p
  for (long s = 0; s <= 2; ++s)
    for (long j = 0; j < 12; ++j)
      for (int it = 0; it < 6; ++it) {
        mpz_class ps = detail::pow_ui(mpz_class(ctx.p), static_cast<unsigned long>(s));
        mpq_class x = mpq_class(rng.range(0, 80)) + mpq_class(ps * rng.range(0, 80));
        CHECK(amice_basis_at(ctx, j, s, x).valuation() >= 0);
      }
}

TEST_CASE("act_right examples") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);
  Weight triv = integer_weight(2, ctx);

  // identity leaves f unchanged
  SuiteRng rng(8);
  std::vector<RingElt> vals;
  for (long i = 0; i < 8; ++i) vals.push_back(RingElt::from_scalar(R, rng.integer(ctx)));
  AmiceFunction f = amice_from_values(vals, 1, R);
  AmiceFunction fid = act_right(f, triv, MonoidMatrix::identity());
  CHECK(equal_at_common_precision(f, fid));

  // trivial character, gamma = (1,1;0,1): translation f(x) -> f(x+1)
  AmiceFunction ft = act_right(f, triv, MonoidMatrix(1, 1, 0, 1));
  for (long x = 0; x < 7; ++x) {
    RingElt lhs = amice_eval(ft, Padic::exact(ctx, x));
    RingElt rhs = amice_eval(f, Padic::exact(ctx, x + 1));
    CHECK(equal_at_common_precision(lhs, rhs));
  }

  // f(x) = x becomes x + 1: coefficients c_0 = 1, c_1 = 1 in the s = 1 basis
  AmiceFunction idf = amice_from_values(sample_exact(R, {0, 1, 2, 3, 4, 5, 6, 7}), 1, R);
  AmiceFunction sh = act_right(idf, triv, MonoidMatrix(1, 1, 0, 1));
  CHECK(sh.coeffs[0].coeff({0, 0}).exact_value() == 1);
  CHECK(sh.coeffs[1].coeff({0, 0}).exact_value() == 1);
}

TEST_CASE("act_right is a right monoid action") {
  PadicContext ctx(3, 10);
  CoeffRing R = CoeffRing::qp(ctx);
  SuiteRng rng(23);
  for (int it = 0; it < 25; ++it) {
    long k = rng.range(2, 6);
    Weight w = integer_weight(k, ctx);
    MonoidMatrix g1 = random_delta0(rng, ctx.p), g2 = random_delta0(rng, ctx.p);
    std::vector<RingElt> vals;
    long J = 8;
    for (long i = 0; i < J; ++i) vals.push_back(RingElt::from_scalar(R, rng.integer(ctx)));
    AmiceFunction f = amice_from_values(vals, 1, R);
    AmiceFunction lhs = act_right(act_right(f, w, g1), w, g2);
    AmiceFunction rhs = act_right(f, w, g1 * g2);
    CHECK(equal_at_common_precision(lhs, rhs));
  }
}

TEST_CASE("act_right integrality lands in the integral lattice") {
  PadicContext ctx(5, 8);
  CoeffRing R = CoeffRing::qp(ctx);
  SuiteRng rng(31);
  Weight w = integer_weight(4, ctx);
  for (int it = 0; it < 10; ++it) {
    MonoidMatrix g = random_delta0(rng, ctx.p);
    std::vector<RingElt> vals;
    for (long i = 0; i < 10; ++i) vals.push_back(RingElt::from_scalar(R, rng.integer(ctx)));
    AmiceFunction f = amice_from_values(vals, 1, R);
    REQUIRE(f.integral());
    AmiceFunction fg = act_right(f, w, g);
    CHECK(fg.integral());
    CHECK(fg.certified_tail >= 0);
  }
}

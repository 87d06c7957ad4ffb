#pragma once

#include "padiclab/iwasawa.hpp"
#include "padiclab/matrix2.hpp"

// Weights: characters of Z_p^x encoded by the tame index t on mu_{p-1} and
// the image c of 1+p. A weight determines chi(b) = omega(b)^t * c^{eta(b)},
// where the second factor is the binomial series
//     c^eta = sum_j binom(eta, j) (c-1)^j,
// convergent whenever v(c-1) > 1/(p^s(p-1)); this also extends chi to
// arguments b = omega(b)<b> with <b> a 1-unit in bigger coefficient rings.

namespace padiclab {

enum class WeightKind { small, affinoid };

struct Weight {
  CoeffRing ring;
  long tame = 0;  // residue class mod p-1
  RingElt c;      // chi(1+p)
  WeightKind kind = WeightKind::small;

  Weight() = default;
  Weight(CoeffRing r, long t, RingElt c_, WeightKind k = WeightKind::small)
      : ring(std::move(r)), tame(t), c(std::move(c_)), kind(k) {
    tame = ((tame % (ring.ctx.p - 1)) + (ring.ctx.p - 1)) % (ring.ctx.p - 1);
    RingElt dev = c - RingElt::one(ring);
    if (!dev.is_zero() && dev.aval_p() < 1)
      throw domain_error("chi(1+p) - 1 must lie in pR (topological nilpotence at desk scale)");
  }

  const PadicContext& ctx() const { return ring.ctx; }
};

// the embedding k -> (z -> z^{k-2})
inline Weight integer_weight(long k, const PadicContext& ctx) {
  CoeffRing R = CoeffRing::qp(ctx);
  mpq_class base(1 + ctx.p);
  long e = k - 2;
  mpq_class cval = 1;
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) cval *= base;
  if (e < 0) cval = 1 / cval;
  return Weight(R, k - 2, RingElt::from_scalar(R, Padic::exact(ctx, cval)));
}

// least s >= 0 with v(c-1) > 1/(p^s(p-1)); 0 for every desk weight since
// v(c-1) >= 1 > 1/(p-1)
inline long s_min(const Weight& w) {
  long v = (w.c - RingElt::one(w.ring)).aval_p();
  if (v <= 0) throw domain_error("not a valid weight: v(chi(1+p)-1) <= 0");
  long s = 0;
  while (!(mpq_class(v) > mpq_class(1) / (detail::pow_ui(mpz_class(w.ctx().p),
                                                         static_cast<unsigned long>(s)) *
                                          (w.ctx().p - 1)))) {
    ++s;
    if (s > 64) throw domain_error("no analyticity radius found");
  }
  return s;
}

// chi(b) for a unit b, via the canonical extension series; exact on all of
// Z_p^x. `target` is the requested absolute precision of the coefficients
// (defaults to the working precision).
inline RingElt char_extend(const Weight& w, const Padic& b, long s = -1, long target = 0) {
  const PadicContext& ctx = w.ctx();
  if (target <= 0) target = ctx.N;
  if (s < 0) s = s_min(w);
  if (s < s_min(w)) throw domain_error("analyticity radius below s_min");
  if (!b.is_unit()) throw domain_error("character argument must be a unit");

  long working = target + w.ring.D + 3;
  RingElt cm1 = w.c - RingElt::one(w.ring);
  long vc = cm1.aval_p();

  // tame part: omega(b)^t
  Padic om = teichmuller(b, working);
  Padic tamepart = om.pow(w.tame);

  // wild part: sum_j binom(eta, j) (c-1)^j, truncated once the term
  // valuation bound j*v(c-1) - j/(p^s(p-1)) clears the negligibility line
  Padic et = eta(b, working);
  long nu = w.ring.negligible_aval() + 3;
  mpq_class psp = mpq_class(detail::pow_ui(mpz_class(ctx.p), static_cast<unsigned long>(s)) *
                            (ctx.p - 1));
  RingElt acc = RingElt::zero(w.ring);
  RingElt cpow = RingElt::one(w.ring);
  Padic binom = Padic::one(ctx);
  long j = 0;
  while (true) {
    if (j > 0 && mpq_class(j) * vc - mpq_class(j) / psp > nu) break;
    if (j > 0) {
      cpow = cpow * cm1;
      binom = binom * (et - Padic::exact(ctx, j - 1)) / Padic::exact(ctx, j);
    }
    acc = acc + binom * cpow;
    ++j;
    if (j > 64 * (nu + 4)) throw precision_error("character series did not terminate");
  }
  return (tamepart * acc).reduced(target);
}

// the transformation factor chi(b z + d) along the period orbit; satisfies
// factor(g1 g2, z) = factor(g1, z) * factor(g2, mobius_period(g1, z))
inline RingElt char_of_mobius_factor(const Weight& w, const MonoidMatrix& g,
                                     const PeriodPoint& pt, long s = -1, long target = 0) {
  const PadicContext& ctx = w.ctx();
  if (!g.in_delta0(ctx.p)) throw domain_error("matrix not in Delta_0(p)");
  if (!(pt.w >= 1 + mpq_class(s_min(w))))
    throw domain_error("period point neighborhood too shallow for this weight");
  Padic u = Padic::exact(ctx, g.b) * pt.z + Padic::exact(ctx, g.d);
  return char_extend(w, u, s, target);
}

}  // namespace padiclab

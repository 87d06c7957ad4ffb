#pragma once

#include <gmpxx.h>

#include "padiclab/padic.hpp"

// 2x2 matrices over Z_p at desk scale: exact integer entries. Delta_0(p) is
// the monoid with c = 0 mod p, d a unit and nonzero determinant; K_0(p) its
// invertible-integral part, K(p^n) the principal congruence subgroups.

namespace padiclab {

struct MonoidMatrix {
  mpz_class a = 1, b = 0, c = 0, d = 1;

  MonoidMatrix() = default;
  MonoidMatrix(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  MonoidMatrix(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

  static MonoidMatrix identity() { return MonoidMatrix(); }

  mpz_class det() const { return a * d - b * c; }

  bool in_delta0(long p) const {
    return det() != 0 && c % p == 0 && d % p != 0;
  }

  bool in_k0(long p) const { return in_delta0(p) && det() % p != 0; }

  bool in_principal_congruence(long p, long n, const PadicContext& ctx) const {
    mpz_class q = ctx.pk(n);
    return detail::mod(a - 1, q) == 0 && detail::mod(d - 1, q) == 0 &&
           detail::mod(b, q) == 0 && detail::mod(c, q) == 0;
  }

  friend MonoidMatrix operator*(const MonoidMatrix& x, const MonoidMatrix& y) {
    return MonoidMatrix(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                        x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
  }

  bool operator==(const MonoidMatrix& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

// Points of the w-neighborhood of p Z_p in the period coordinate. w is an
// exact positive rational; at desk scale (scalars in Z_p) membership in the
// locus reduces to v_p(z) >= 1, certified by the scalar's precision.
struct PeriodPoint {
  Padic z;
  mpq_class w;

  PeriodPoint(Padic z_, mpq_class w_) : z(std::move(z_)), w(std::move(w_)) {
    if (w <= 0) throw domain_error("period neighborhood parameter must be positive");
    if (!in_neighborhood(z)) throw domain_error("period point not within p^{-w} of pZ_p");
  }

  static bool in_neighborhood(const Padic& z) {
    return z.precision() >= 1 && z.valuation() >= 1;
  }
};

// z.gamma = (a z + c) / (b z + d); stable on the w-neighborhood for
// gamma in K_0(p), and an isometry there. Composition order:
// mobius_period(g1 * g2, z) = mobius_period(g2, mobius_period(g1, z)).
inline PeriodPoint mobius_period(const MonoidMatrix& g, const PeriodPoint& pt) {
  const PadicContext& ctx = pt.z.context();
  if (!g.in_k0(ctx.p))
    throw domain_error("period action requires K_0(p); use up_shift for diag(p,1)");
  Padic num = Padic::exact(ctx, g.a) * pt.z + Padic::exact(ctx, g.c);
  Padic den = Padic::exact(ctx, g.b) * pt.z + Padic::exact(ctx, g.d);
  return PeriodPoint(num / den, pt.w);
}

// the diag(p,1) shift: z -> p z, moving the w-neighborhood one step deeper
inline PeriodPoint up_shift(const PeriodPoint& pt) {
  const PadicContext& ctx = pt.z.context();
  return PeriodPoint(Padic::exact(ctx, ctx.p) * pt.z, pt.w + 1);
}

}  // namespace padiclab

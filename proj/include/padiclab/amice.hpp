#pragma once

#include <vector>

#include "padiclab/iwasawa.hpp"
#include "padiclab/matrix2.hpp"
#include "padiclab/weights.hpp"

// s-analytic functions Z_p -> R in the Amice basis
//     e_j^s(x) = floor(p^{-s} j)! * binom(x, j),
// truncated at J coefficients. Expansion and evaluation are mutually inverse
// via exact Mahler finite differences; the monoid action is computed by
// sampling at integer points and re-expanding.

namespace padiclab {

// e_j^s at an exact integer/rational argument, as an exact scalar
inline Padic amice_basis_at(const PadicContext& ctx, long j, long s, const mpq_class& x) {
  mpq_class prod = 1;
  for (long i = 0; i < j; ++i) prod *= (x - i);
  mpz_class jf;
  mpz_fac_ui(jf.get_mpz_t(), static_cast<unsigned long>(j));
  prod /= mpq_class(jf);
  prod *= mpq_class(factorial_floor(j, s, ctx));
  return Padic::exact(ctx, prod);
}

inline Padic amice_basis_at(const PadicContext& ctx, long j, long s, const Padic& x) {
  if (x.is_exact()) return amice_basis_at(ctx, j, s, x.exact_value());
  return padic_binomial(x, j) * Padic::exact(ctx, factorial_floor(j, s, ctx));
}

// lambda_j with e_j^{s-1} = lambda_j e_j^s; exact integer, s >= 1
inline mpz_class restriction_scale(long j, long s, const PadicContext& ctx) {
  if (s < 1) throw domain_error("restriction scale needs s >= 1");
  mpz_class num = factorial_floor(j, s - 1, ctx);
  mpz_class den = factorial_floor(j, s, ctx);
  return num / den;  // exact: floor(m/p)! divides m!
}

inline long restriction_scale_vp(long j, long s, const PadicContext& ctx) {
  return valp_factorial_floor(j, s - 1, ctx) - valp_factorial_floor(j, s, ctx);
}

struct AmiceFunction {
  CoeffRing ring;
  long s = 0;
  std::vector<RingElt> coeffs;
  // valuation lower bound for the discarded tail coefficients; kInfPrec when
  // the truncation is the function itself
  long certified_tail = kInfPrec;

  AmiceFunction() = default;
  AmiceFunction(CoeffRing r, long s_, std::vector<RingElt> c, long tail = kInfPrec)
      : ring(std::move(r)), s(s_), coeffs(std::move(c)), certified_tail(tail) {
    if (s < 0) throw domain_error("negative analyticity radius");
  }

  long length() const { return static_cast<long>(coeffs.size()); }

  static AmiceFunction constant(const CoeffRing& r, long s, const RingElt& v, long J) {
    std::vector<RingElt> c(static_cast<size_t>(J), RingElt::zero(r));
    if (J > 0) c[0] = v;
    return AmiceFunction(r, s, std::move(c));
  }

  static AmiceFunction basis_vector(const CoeffRing& r, long s, long j, long J) {
    std::vector<RingElt> c(static_cast<size_t>(J), RingElt::zero(r));
    if (j >= J) throw domain_error("basis index past truncation");
    c[static_cast<size_t>(j)] = RingElt::one(r);
    return AmiceFunction(r, s, std::move(c));
  }

  bool integral() const {
    for (auto& c : coeffs)
      if (c.aval_p() < 0) return false;
    return true;
  }

  friend AmiceFunction operator+(const AmiceFunction& f, const AmiceFunction& g) {
    f.check_compatible(g);
    std::vector<RingElt> c;
    size_t n = std::max(f.coeffs.size(), g.coeffs.size());
    for (size_t i = 0; i < n; ++i) {
      RingElt v = RingElt::zero(f.ring);
      if (i < f.coeffs.size()) v = v + f.coeffs[i];
      if (i < g.coeffs.size()) v = v + g.coeffs[i];
      c.push_back(v);
    }
    return AmiceFunction(f.ring, f.s, std::move(c),
                         std::min(f.certified_tail, g.certified_tail));
  }

  friend AmiceFunction operator*(const RingElt& a, const AmiceFunction& f) {
    std::vector<RingElt> c;
    for (auto& x : f.coeffs) c.push_back(a * x);
    return AmiceFunction(f.ring, f.s, std::move(c),
                         saturating_add(f.certified_tail, a.aval_p()));
  }

  void check_compatible(const AmiceFunction& g) const {
    if (!(ring == g.ring) || s != g.s) throw domain_error("mismatched function spaces");
  }
};

inline bool equal_at_common_precision(const AmiceFunction& f, const AmiceFunction& g) {
  f.check_compatible(g);
  size_t n = std::max(f.coeffs.size(), g.coeffs.size());
  for (size_t i = 0; i < n; ++i) {
    RingElt a = i < f.coeffs.size() ? f.coeffs[i] : RingElt::zero(f.ring);
    RingElt b = i < g.coeffs.size() ? g.coeffs[i] : RingElt::zero(g.ring);
    if (!(a - b).is_zero()) return false;
  }
  return true;
}

// Expansion from the values f(0), ..., f(J-1): Mahler finite differences
// divided by floor(p^{-s} j)!. The division is where precision can drain;
// the scalar layer reports it rather than silently flooring.
inline AmiceFunction amice_from_values(const std::vector<RingElt>& values, long s,
                                       const CoeffRing& ring, long tail = kInfPrec) {
  std::vector<RingElt> diff = values;
  std::vector<RingElt> out;
  long J = static_cast<long>(values.size());
  for (long j = 0; j < J; ++j) {
    mpz_class fj = factorial_floor(j, s, ring.ctx);
    out.push_back(Padic::exact(ring.ctx, mpq_class(1) / mpq_class(fj)) * diff[0]);
    // forward difference pass
    for (size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  return AmiceFunction(ring, s, std::move(out), tail);
}

// eval at an integral scalar; the discarded-tail bound folds into the
// certified precision of the output
inline RingElt amice_eval(const AmiceFunction& f, const Padic& x) {
  if (x.valuation() < 0) throw domain_error("evaluation point must be integral");
  RingElt acc = RingElt::zero(f.ring);
  for (long j = 0; j < f.length(); ++j) {
    if (f.coeffs[static_cast<size_t>(j)].terms().empty()) continue;  // exact zero
    acc = acc + amice_basis_at(f.ring.ctx, j, f.s, x) * f.coeffs[static_cast<size_t>(j)];
  }
  if (f.certified_tail < kInfPrec) acc = acc.reduced(f.certified_tail);
  return acc;
}

// (f . gamma)(x) = chi(cx + d) f((ax + b)/(cx + d)) for gamma in Delta_0(p),
// recovered by sampling at x = 0..J-1. Guard digits cover the factorial
// divisions of the re-expansion, so exact inputs keep full working precision.
inline AmiceFunction act_right(const AmiceFunction& f, const Weight& w, const MonoidMatrix& g,
                               long s = -1) {
  const PadicContext& ctx = f.ring.ctx;
  if (!g.in_delta0(ctx.p)) throw domain_error("matrix not in Delta_0(p)");
  if (s < 0) s = f.s;
  if (s != f.s) throw domain_error("analyticity radius mismatch");
  if (s < 1 + s_min(w))
    throw domain_error("monoid action needs s >= 1 + s_min(weight)");
  long J = f.length();
  long guard = valp_factorial_floor(J > 0 ? J - 1 : 0, s, ctx) + 2;
  long target = ctx.N + guard;

  std::vector<RingElt> samples;
  samples.reserve(static_cast<size_t>(J));
  for (long x = 0; x < J; ++x) {
    mpq_class cxd(g.c * x + g.d);
    mpq_class axb(g.a * x + g.b);
    Padic y = Padic::exact(ctx, axb / cxd);
    RingElt chi = char_extend(w, Padic::exact(ctx, cxd), s, target);
    samples.push_back(chi * amice_eval(f, y));
  }
  // the image of the truncation has coefficient valuations >= min over the
  // input coefficients; the input's own discarded tail caps everything
  long vmin = kInfPrec;
  for (auto& c : f.coeffs) vmin = std::min(vmin, c.aval_p());
  long tail = std::min(vmin, f.certified_tail);
  AmiceFunction out = amice_from_values(samples, s, f.ring, tail);
  long cap = std::min(static_cast<long>(ctx.N), f.certified_tail);
  for (auto& c : out.coeffs) c = c.reduced(cap);
  return out;
}

}  // namespace padiclab

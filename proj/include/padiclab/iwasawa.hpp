#pragma once

#include <map>
#include <utility>
#include <vector>

#include "padiclab/padic.hpp"

// Coefficient rings: Q_p (d = 0) and truncated Iwasawa algebras
// Z_p[[T_1..T_d]] / (degree > D), d <= 2, with ideal of definition
// a = (p, T_1, ..., T_d). Elements are exact modulo (p^N, degree > D);
// per-coefficient precision is tracked by the scalar layer.

namespace padiclab {

struct CoeffRing {
  PadicContext ctx;
  int d = 0;   // number of Iwasawa variables (0 = Q_p scalars)
  long D = 0;  // total-degree truncation

  CoeffRing() = default;
  CoeffRing(const PadicContext& c, int d_, long D_) : ctx(c), d(d_), D(D_) {
    if (d < 0 || d > 2) throw domain_error("Iwasawa rings support d <= 2 variables");
    if (d > 0 && D < 1) throw domain_error("degree truncation must be >= 1");
    if (d == 0) D = 0;
  }
  static CoeffRing qp(const PadicContext& c) { return CoeffRing(c, 0, 0); }

  bool is_qp() const { return d == 0; }
  bool operator==(const CoeffRing& o) const { return ctx == o.ctx && d == o.d && D == o.D; }

  // smallest a-adic valuation that is indistinguishable from infinity at
  // working precision: p^N for the constant term, shifted by degree headroom
  long negligible_aval() const { return ctx.N + D; }
};

using Expo = std::pair<int, int>;  // exponents of T_1, T_2

inline int expo_total(const Expo& e) { return e.first + e.second; }

inline long saturating_add(long a, long b) {
  if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
  return std::min(a + b, static_cast<long>(kInfPrec));
}

class RingElt {
 public:
  RingElt() = default;
  explicit RingElt(const CoeffRing& r) : ring_(r) {}

  static RingElt from_scalar(const CoeffRing& r, const Padic& c) {
    RingElt x(r);
    x.set_term({0, 0}, c);
    return x;
  }
  static RingElt constant(const CoeffRing& r, long c) {
    return from_scalar(r, Padic::exact(r.ctx, c));
  }
  static RingElt zero(const CoeffRing& r) { return RingElt(r); }
  static RingElt one(const CoeffRing& r) { return constant(r, 1); }
  static RingElt variable(const CoeffRing& r, int i) {
    if (i < 1 || i > r.d) throw domain_error("no such ring variable");
    RingElt x(r);
    Expo e{i == 1 ? 1 : 0, i == 2 ? 1 : 0};
    x.set_term(e, Padic::one(r.ctx));
    return x;
  }

  const CoeffRing& ring() const { return ring_; }
  const std::map<Expo, Padic>& terms() const { return terms_; }

  // certified lower bound for the a-adic valuation of anything dropped past
  // the degree truncation (kInfPrec when nothing was dropped)
  long tail_aval() const { return tail_aval_; }

  Padic coeff(const Expo& e) const {
    auto it = terms_.find(e);
    if (it != terms_.end()) return it->second;
    return Padic::zero(ring_.ctx);
  }

  void set_term(const Expo& e, const Padic& c) {
    if (expo_total(e) > ring_.D || e.first < 0 || e.second < 0)
      throw domain_error("monomial outside ring truncation");
    if (e.second > 0 && ring_.d < 2) throw domain_error("monomial outside ring truncation");
    if (e.first > 0 && ring_.d < 1) throw domain_error("monomial outside ring truncation");
    if (c.is_exact() && c.exact_value() == 0)
      terms_.erase(e);
    else
      terms_[e] = c;
  }

  RingElt operator-() const {
    RingElt r(ring_);
    r.tail_aval_ = tail_aval_;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend RingElt operator+(const RingElt& a, const RingElt& b) {
    a.check_same(b);
    RingElt r = a;
    r.tail_aval_ = std::min(a.tail_aval_, b.tail_aval_);
    for (auto& [e, c] : b.terms_) {
      auto it = r.terms_.find(e);
      if (it == r.terms_.end())
        r.terms_[e] = c;
      else {
        Padic s = it->second + c;
        if (s.is_exact() && s.exact_value() == 0)
          r.terms_.erase(it);
        else
          it->second = s;
      }
    }
    return r;
  }

  friend RingElt operator-(const RingElt& a, const RingElt& b) { return a + (-b); }

  friend RingElt operator*(const RingElt& a, const RingElt& b) {
    a.check_same(b);
    RingElt r(a.ring_);
    r.tail_aval_ = std::min(saturating_add(a.tail_aval_, b.aval()),
                            saturating_add(b.tail_aval_, a.aval()));
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Expo e{ea.first + eb.first, ea.second + eb.second};
        if (expo_total(e) > a.ring_.D) {
          long va = ca.valuation(), vb = cb.valuation();
          r.tail_aval_ = std::min(r.tail_aval_,
                                  saturating_add(saturating_add(va, vb), expo_total(e)));
          continue;
        }
        Padic prod = ca * cb;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end())
          r.terms_[e] = prod;
        else
          it->second = it->second + prod;
      }
    r.prune();
    return r;
  }

  friend RingElt operator*(const Padic& s, const RingElt& b) {
    RingElt r(b.ring_);
    r.tail_aval_ = saturating_add(b.tail_aval_, s.valuation());
    for (auto& [e, c] : b.terms_) r.terms_[e] = s * c;
    r.prune();
    return r;
  }

  RingElt pow(long n) const {
    RingElt r = one(ring_);
    RingElt b = *this;
    while (n > 0) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }

  // plain p-adic valuation lower bound: min over coefficients, degrees ignored
  long aval_p() const {
    long v = kInfPrec;
    for (auto& [e, c] : terms_) v = std::min(v, c.valuation());
    if (tail_aval_ < kInfPrec) v = std::min(v, tail_aval_ - 2 * ring_.D);
    return v;
  }

  // a-adic valuation: min over monomials of v_p(coeff) + total degree.
  // Lower bound only when coefficients are inexact zeroes or terms were
  // dropped past the degree truncation.
  long aval() const {
    long v = kInfPrec;
    for (auto& [e, c] : terms_) {
      long cv = c.valuation();
      if (cv >= kInfPrec) continue;
      v = std::min(v, cv + expo_total(e));
    }
    return std::min(v, tail_aval_);
  }

  bool is_zero() const {
    for (auto& [e, c] : terms_)
      if (!c.is_zero()) return false;
    return true;
  }

  // the element is certified zero modulo (p^n, degree > D)
  bool is_zero_at(long n) const {
    for (auto& [e, c] : terms_)
      if (!c.is_zero_at(n)) return false;
    return true;
  }

  // min absolute precision over coefficients (kInfPrec when all exact)
  long precision() const {
    long n = kInfPrec;
    for (auto& [e, c] : terms_) n = std::min(n, c.precision());
    return n;
  }

  RingElt reduced(long n) const {
    RingElt r(ring_);
    r.tail_aval_ = tail_aval_;
    for (auto& [e, c] : terms_) {
      Padic rc = c.reduced(n);
      if (!(rc.is_zero() && rc.precision() >= n)) r.terms_[e] = rc;
    }
    return r;
  }
  RingElt canonical() const { return reduced(ring_.ctx.N); }

  // evaluation T_i -> t_i with v_p(t_i) >= 1 (the a-adically continuous points)
  Padic specialize(const std::vector<Padic>& pts) const {
    if (static_cast<int>(pts.size()) != ring_.d)
      throw domain_error("wrong number of specialization points");
    for (auto& t : pts)
      if (t.valuation() < 1) throw domain_error("specialization point must have v_p >= 1");
    Padic acc = Padic::zero(ring_.ctx);
    for (auto& [e, c] : terms_) {
      Padic m = c;
      if (e.first) m = m * pts[0].pow(e.first);
      if (e.second) m = m * pts[1].pow(e.second);
      acc = acc + m;
    }
    // anything dropped past the truncation has p-adic valuation >= tail_aval_
    // at points with v_p >= 1
    if (tail_aval_ < kInfPrec) acc = acc.reduced(tail_aval_);
    return acc;
  }

  friend bool equal_at_common_precision(const RingElt& a, const RingElt& b) {
    return (a - b).is_zero();
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_exact() && it->second.exact_value() == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
  }
  void check_same(const RingElt& o) const {
    if (!(ring_ == o.ring_)) throw domain_error("mismatched coefficient rings");
  }

  CoeffRing ring_;
  std::map<Expo, Padic> terms_;
  long tail_aval_ = kInfPrec;
};

// Exact element of R / a^m (finite ring): monomials of total degree < m with
// integer coefficient mod p^{m - degree}.
class ResidueElt {
 public:
  ResidueElt() = default;
  ResidueElt(const CoeffRing& r, long m) : ring_(r), m_(m) {
    if (m < 0) throw domain_error("negative filtration level");
  }

  static ResidueElt from_ring_elt(const RingElt& x, long m) {
    ResidueElt r(x.ring(), m);
    for (auto& [e, c] : x.terms()) {
      if (expo_total(e) >= m) continue;
      long need = m - expo_total(e);
      if (c.precision() < need)
        throw precision_error("coefficient not certified modulo a^k");
      Padic red = c.reduced(need);
      mpz_class z = red.is_zero() ? mpz_class(0)
                                  : mpz_class(red.representative().get_num() *
                                              detail::inv_mod(red.representative().get_den(),
                                                              x.ring().ctx.pk(need)));
      r.add_term(e, z);
    }
    return r;
  }

  const CoeffRing& ring() const { return ring_; }
  long level() const { return m_; }
  const std::map<Expo, mpz_class>& coeffs() const { return coeffs_; }

  mpz_class coeff(const Expo& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? mpz_class(0) : it->second;
  }

  void add_term(const Expo& e, const mpz_class& z) {
    long deg = expo_total(e);
    if (deg >= m_) return;
    mpz_class mod = ring_.ctx.pk(m_ - deg);
    mpz_class v = detail::mod(coeff(e) + z, mod);
    if (v == 0)
      coeffs_.erase(e);
    else
      coeffs_[e] = v;
  }

  friend ResidueElt operator+(const ResidueElt& a, const ResidueElt& b) {
    a.check_same(b);
    ResidueElt r = a;
    for (auto& [e, z] : b.coeffs_) r.add_term(e, z);
    return r;
  }

  ResidueElt operator-() const {
    ResidueElt r(ring_, m_);
    for (auto& [e, z] : coeffs_) r.add_term(e, -z);
    return r;
  }

  friend ResidueElt operator-(const ResidueElt& a, const ResidueElt& b) { return a + (-b); }

  friend ResidueElt operator*(const ResidueElt& a, const ResidueElt& b) {
    a.check_same(b);
    ResidueElt r(a.ring_, a.m_);
    for (auto& [ea, za] : a.coeffs_)
      for (auto& [eb, zb] : b.coeffs_) {
        Expo e{ea.first + eb.first, ea.second + eb.second};
        if (expo_total(e) >= a.m_) continue;
        r.add_term(e, za * zb);
      }
    return r;
  }

  friend ResidueElt operator*(const mpz_class& s, const ResidueElt& b) {
    ResidueElt r(b.ring_, b.m_);
    for (auto& [e, z] : b.coeffs_) r.add_term(e, s * z);
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }

  bool operator==(const ResidueElt& o) const {
    return m_ == o.m_ && coeffs_ == o.coeffs_;
  }

  // exact division by p^t; the residue is only determined at level m - t
  ResidueElt divide_p_power(long t) const {
    if (t == 0) return *this;
    ResidueElt r(ring_, m_ - t);
    mpz_class pt = ring_.ctx.pk(t);
    for (auto& [e, z] : coeffs_) {
      if (z % pt != 0) throw domain_error("residue not divisible by p^t");
      r.add_term(e, z / pt);
    }
    return r;
  }

 private:
  void check_same(const ResidueElt& o) const {
    if (!(ring_ == o.ring_) || m_ != o.m_) throw domain_error("mismatched residue rings");
  }

  CoeffRing ring_;
  long m_ = 0;
  std::map<Expo, mpz_class> coeffs_;
};

// cyclic decomposition of R/a^m as an abelian group: one Z/p^{m-|e|} per
// monomial e with |e| < m, listed in term order
inline std::vector<std::pair<Expo, long>> residue_ring_generators(const CoeffRing& r, long m) {
  std::vector<std::pair<Expo, long>> out;
  for (int i = 0; i <= (r.d >= 1 ? std::min<long>(m - 1, r.D) : 0); ++i)
    for (int j = 0; j <= (r.d >= 2 ? std::min<long>(m - 1 - i, r.D - i) : 0); ++j) {
      if (i + j >= m) continue;
      out.push_back({{i, j}, m - (i + j)});
    }
  return out;
}

}  // namespace padiclab

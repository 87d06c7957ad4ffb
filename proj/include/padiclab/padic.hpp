#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

// Exact p-adic scalars with absolute-precision tracking.
//
// A scalar is either exact (an mpq whose denominator may contain powers of p)
// or an approximation p^v * m + O(p^n) with m a unit mod p, 0 < m < p^{n-v}.
// "Zero at precision n" (written 0 + O(p^n)) means only v_p >= n is certified.
// Arithmetic never reports more precision than the inputs justify: addition
// takes the min of absolute precisions, multiplication shifts by valuations.

namespace padiclab {

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Sentinel for infinite valuation / exact precision.
inline constexpr long kInfPrec = LONG_MAX / 4;

namespace detail {

inline bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline mpz_class pow_ui(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline long vp(const mpz_class& z, long p) {
  if (z == 0) return kInfPrec;
  mpz_class t = z, q, r;
  long v = 0;
  mpz_class mp(p);
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), mp.get_mpz_t());
    if (r != 0) break;
    t = q;
    ++v;
  }
  return v;
}

inline long vp(const mpq_class& q, long p) {
  if (q == 0) return kInfPrec;
  return vp(mpz_class(q.get_num()), p) - vp(mpz_class(q.get_den()), p);
}

// Inverse of a mod m; throws if not coprime.
inline mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw domain_error("inverse of non-unit");
  return r;
}

inline mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace detail

struct PadicContext {
  long p = 3;
  long N = 10;

  PadicContext() = default;
  PadicContext(long p_, long N_) : p(p_), N(N_) {
    if (!detail::is_odd_prime(p)) throw domain_error("p must be an odd prime");
    if (N < 1) throw domain_error("precision N must be >= 1");
  }

  bool operator==(const PadicContext& o) const { return p == o.p && N == o.N; }

  mpz_class pk(long k) const {
    if (k < 0) throw domain_error("negative power of p as modulus");
    return detail::pow_ui(mpz_class(p), static_cast<unsigned long>(k));
  }

  PadicContext with_precision(long M) const { return PadicContext(p, M); }
};

class Padic {
 public:
  Padic() = default;

  // Exact constructions.
  static Padic exact(const PadicContext& ctx, const mpz_class& z) {
    Padic x;
    x.ctx_ = ctx;
    x.exact_ = true;
    x.q_ = mpq_class(z);
    return x;
  }
  static Padic exact(const PadicContext& ctx, const mpq_class& q) {
    Padic x;
    x.ctx_ = ctx;
    x.exact_ = true;
    x.q_ = q;
    x.q_.canonicalize();
    return x;
  }
  static Padic exact(const PadicContext& ctx, long z) { return exact(ctx, mpz_class(z)); }
  static Padic zero(const PadicContext& ctx) { return exact(ctx, 0L); }
  static Padic one(const PadicContext& ctx) { return exact(ctx, 1L); }

  // p^v * m + O(p^n); normalizes the mantissa.
  static Padic approx(const PadicContext& ctx, long v, const mpz_class& m, long n) {
    Padic x;
    x.ctx_ = ctx;
    x.exact_ = false;
    x.prec_ = n;
    if (n <= 0) throw precision_error("no certified digits");
    mpz_class mm = detail::mod(m, ctx.pk(n > v ? n - v : 0));
    if (mm == 0 || v >= n) {
      x.val_ = n;  // zero at precision n
      x.mant_ = 0;
      return x;
    }
    long shift = detail::vp(mm, ctx.p);
    x.val_ = v + shift;
    if (x.val_ >= n) {
      x.val_ = n;
      x.mant_ = 0;
      return x;
    }
    mpz_class unit = mm / detail::pow_ui(mpz_class(ctx.p), static_cast<unsigned long>(shift));
    x.mant_ = detail::mod(unit, ctx.pk(n - x.val_));
    return x;
  }

  static Padic zero_at(const PadicContext& ctx, long n) { return approx(ctx, n, 0, n); }

  const PadicContext& context() const { return ctx_; }
  bool is_exact() const { return exact_; }

  // Absolute precision (kInfPrec when exact).
  long precision() const { return exact_ ? kInfPrec : prec_; }

  // True when nothing distinguishes the value from 0 at the certified precision.
  bool is_zero() const {
    if (exact_) return q_ == 0;
    return mant_ == 0;
  }

  // v_p; for inexact zero this is only a lower bound (== precision()).
  long valuation() const {
    if (exact_) return detail::vp(q_, ctx_.p);
    return mant_ == 0 ? prec_ : val_;
  }

  bool is_integral() const { return valuation() >= 0; }

  bool is_unit() const {
    long v = valuation();
    if (v != 0) return false;
    if (!exact_ && mant_ == 0) return false;
    return true;
  }

  const mpq_class& exact_value() const {
    if (!exact_) throw domain_error("not an exact scalar");
    return q_;
  }

  // Reduce to absolute precision <= n.
  Padic reduced(long n) const {
    if (n >= kInfPrec) return *this;
    if (n <= 0) throw precision_error("no certified digits after reduction");
    if (exact_) {
      long v = detail::vp(q_, ctx_.p);
      if (v >= n) return zero_at(ctx_, n);
      // representative of q_ mod p^n: numerator * den^{-1} mod p^{n-v}
      mpz_class num = q_.get_num(), den = q_.get_den();
      long vnum = detail::vp(num, ctx_.p);
      mpz_class pv = detail::pow_ui(mpz_class(ctx_.p), static_cast<unsigned long>(vnum));
      num /= pv;
      long vden = detail::vp(den, ctx_.p);
      mpz_class pw = detail::pow_ui(mpz_class(ctx_.p), static_cast<unsigned long>(vden));
      den /= pw;
      mpz_class mod = ctx_.pk(n - v);
      mpz_class m = detail::mod(num * detail::inv_mod(den, mod), mod);
      Padic x;
      x.ctx_ = ctx_;
      x.exact_ = false;
      x.val_ = v;
      x.mant_ = m;
      x.prec_ = n;
      return x;
    }
    if (n >= prec_) return *this;
    return approx(ctx_, mant_ == 0 ? n : val_, mant_, n);
  }

  // Reduce to the context working precision.
  Padic canonical() const { return reduced(ctx_.N); }

  // Exact rational representative of the stored data.
  mpq_class representative() const {
    if (exact_) return q_;
    if (mant_ == 0) return mpq_class(0);
    mpq_class r(mant_);
    if (val_ >= 0)
      r *= mpq_class(detail::pow_ui(mpz_class(ctx_.p), static_cast<unsigned long>(val_)));
    else
      r /= mpq_class(detail::pow_ui(mpz_class(ctx_.p), static_cast<unsigned long>(-val_)));
    return r;
  }

  Padic operator-() const {
    if (exact_) return exact(ctx_, mpq_class(-q_));
    if (mant_ == 0) return *this;
    return approx(ctx_, val_, ctx_.pk(prec_ - val_) - mant_, prec_);
  }

  friend Padic operator+(const Padic& a, const Padic& b) {
    a.check_same(b);
    if (a.exact_ && b.exact_) return exact(a.ctx_, mpq_class(a.q_ + b.q_));
    long n = std::min(a.precision(), b.precision());
    mpq_class s = a.representative() + b.representative();
    return from_rational_at(a.ctx_, s, n);
  }

  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

  friend Padic operator*(const Padic& a, const Padic& b) {
    a.check_same(b);
    if (a.exact_ && b.exact_) return exact(a.ctx_, mpq_class(a.q_ * b.q_));
    long n = std::min(a.precision() + b.val_lower_bound(),
                      b.precision() + a.val_lower_bound());
    if (n >= kInfPrec / 2) n = kInfPrec - 1;
    mpq_class s = a.representative() * b.representative();
    if (a.is_zero() || b.is_zero()) {
      // certified only that v_p >= n
      return n > 0 ? zero_at(a.ctx_, n) : throw precision_error("product lost all precision");
    }
    return from_rational_at(a.ctx_, s, n);
  }

  Padic inverse() const {
    if (exact_) {
      if (q_ == 0) throw domain_error("inverse of zero");
      return exact(ctx_, mpq_class(1 / q_));
    }
    if (mant_ == 0) throw precision_error("inverse of zero-at-precision scalar");
    long n = prec_ - 2 * val_;
    if (n <= 0) throw precision_error("inverse lost all precision");
    mpq_class r = 1 / representative();
    return from_rational_at(ctx_, r, n);
  }

  friend Padic operator/(const Padic& a, const Padic& b) {
    if (a.exact_ && b.exact_) {
      if (b.q_ == 0) throw domain_error("division by zero");
      return exact(a.ctx_, mpq_class(a.q_ / b.q_));
    }
    return a * b.inverse();
  }

  Padic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Padic r = one(ctx_);
    Padic b = *this;
    long ee = e;
    while (ee > 0) {
      if (ee & 1) r = r * b;
      b = b * b;
      ee >>= 1;
    }
    return r;
  }

  // x == y as far as both are certified; the common certified precision is
  // min of the two absolute precisions.
  friend bool equal_at_common_precision(const Padic& a, const Padic& b) {
    Padic d = a - b;
    return d.is_zero();
  }

  bool is_zero_at(long n) const {
    if (precision() < n) return false;
    return reduced(n).is_zero();
  }

  // Canonical text form: `p^v * m + O(p^n)` or `0 + O(p^n)`.
  std::string to_string() const {
    Padic r = canonical();
    std::string out;
    if (r.mant_ == 0) {
      out = "0 + O(" + base_str() + "^" + std::to_string(r.prec_) + ")";
    } else {
      out = base_str() + "^" + std::to_string(r.val_) + " * " + r.mant_.get_str() +
            " + O(" + base_str() + "^" + std::to_string(r.prec_) + ")";
    }
    return out;
  }

  static Padic parse(const PadicContext& ctx, const std::string& s);

 private:
  std::string base_str() const { return std::to_string(ctx_.p); }

  long val_lower_bound() const {
    if (exact_) return q_ == 0 ? kInfPrec : detail::vp(q_, ctx_.p);
    return mant_ == 0 ? prec_ : val_;
  }

  void check_same(const Padic& o) const {
    if (!(ctx_ == o.ctx_)) throw domain_error("mismatched p-adic contexts");
  }

  static Padic from_rational_at(const PadicContext& ctx, const mpq_class& q, long n) {
    if (n <= 0) throw precision_error("operation lost all certified digits");
    if (n >= kInfPrec / 2) n = kInfPrec - 1;
    long v = detail::vp(q, ctx.p);
    if (v >= n) return zero_at(ctx, n);
    mpz_class num = q.get_num(), den = q.get_den();
    long vnum = detail::vp(num, ctx.p);
    num /= detail::pow_ui(mpz_class(ctx.p), static_cast<unsigned long>(vnum));
    long vden = detail::vp(den, ctx.p);
    den /= detail::pow_ui(mpz_class(ctx.p), static_cast<unsigned long>(vden));
    mpz_class mod = ctx.pk(n - v);
    mpz_class m = detail::mod(num * detail::inv_mod(den, mod), mod);
    Padic x;
    x.ctx_ = ctx;
    x.exact_ = false;
    x.val_ = v;
    x.mant_ = m;
    x.prec_ = n;
    return x;
  }

  PadicContext ctx_;
  bool exact_ = true;
  mpq_class q_ = 0;     // exact value
  long val_ = 0;        // valuation of the approximation
  mpz_class mant_ = 0;  // unit mantissa; 0 encodes zero-at-precision
  long prec_ = 0;       // absolute precision
};

inline Padic Padic::parse(const PadicContext& ctx, const std::string& s) {
  // Grammar: `0 + O(p^n)` | `p^v * m + O(p^n)`, matching to_string output.
  auto fail = [&]() -> Padic { throw parse_error("bad p-adic scalar: " + s); };
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  std::string ps = std::to_string(ctx.p);
  auto expect = [&](size_t& i, const std::string& lit) {
    if (t.compare(i, lit.size(), lit) != 0) throw parse_error("bad p-adic scalar: " + s);
    i += lit.size();
  };
  auto read_int = [&](size_t& i) {
    size_t j = i;
    if (j < t.size() && t[j] == '-') ++j;
    while (j < t.size() && isdigit(static_cast<unsigned char>(t[j]))) ++j;
    if (j == i) throw parse_error("bad p-adic scalar: " + s);
    std::string d = t.substr(i, j - i);
    i = j;
    return d;
  };
  size_t i = 0;
  if (t.rfind("0+O(", 0) == 0) {
    i = 4;
    expect(i, ps);
    expect(i, "^");
    long n = std::stol(read_int(i));
    expect(i, ")");
    if (i != t.size() || n < 1) return fail();
    return zero_at(ctx, n);
  }
  expect(i, ps);
  expect(i, "^");
  long v = std::stol(read_int(i));
  expect(i, "*");
  mpz_class m(read_int(i));
  expect(i, "+O(");
  expect(i, ps);
  expect(i, "^");
  long n = std::stol(read_int(i));
  expect(i, ")");
  if (i != t.size() || n < 1 || v >= n) return fail();
  if (m <= 0 || m % ctx.p == 0 || m >= ctx.pk(n - v)) return fail();
  return approx(ctx, v, m, n);
}

// ---- number-theoretic helpers used throughout -------------------------------

// v_p(x!) by Legendre's formula.
inline long legendre_vp_factorial(long x, long p) {
  long v = 0;
  while (x > 0) {
    x /= p;
    v += x;
  }
  return v;
}

// v_p( floor(p^{-s} j)! ); bounded by j / (p^s (p-1)).
inline long valp_factorial_floor(long j, long s, const PadicContext& ctx) {
  if (j < 0 || s < 0) throw domain_error("negative argument");
  long m = j;
  for (long i = 0; i < s; ++i) m /= ctx.p;
  return legendre_vp_factorial(m, ctx.p);
}

// floor(p^{-s} j)! as an exact integer.
inline mpz_class factorial_floor(long j, long s, const PadicContext& ctx) {
  long m = j;
  for (long i = 0; i < s; ++i) m /= ctx.p;
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

// Teichmuller lift: the (p-1)-st root of unity congruent to b mod p,
// computed to absolute precision n (default: context precision). Depends only
// on b mod p, so the result carries full precision.
inline Padic teichmuller(const Padic& b, long n = 0) {
  const PadicContext& ctx = b.context();
  if (n <= 0) n = ctx.N;
  if (!b.is_unit()) throw domain_error("teichmuller of non-unit");
  mpz_class pk = ctx.pk(n);
  mpz_class x = detail::mod(b.reduced(1).representative().get_num() *
                                detail::inv_mod(b.reduced(1).representative().get_den(), pk),
                            pk);
  // iterate x <- x^p; stabilizes after n steps
  for (long i = 0; i < n; ++i) {
    mpz_class y;
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(ctx.p), pk.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return Padic::approx(ctx, 0, x, n);
}

// log(1 + u) for v_p(u) >= 1, summed until the terms are certifiably below
// the target precision. Division by the index is the only precision loss.
inline Padic padic_log1p(const Padic& u, long n = 0) {
  const PadicContext& ctx = u.context();
  if (n <= 0) n = ctx.N;
  long vu = u.valuation();
  if (vu < 1) throw domain_error("log series needs v_p(u) >= 1");
  if (u.is_zero()) return Padic::zero_at(ctx, std::min(n, u.precision()));
  Padic sum = Padic::zero(ctx);
  Padic term = Padic::one(ctx);
  long k = 1;
  while (true) {
    // v_p(u^k / k) >= k*vu - floor(log_p k), increasing in k
    long ilog = 0;
    for (long t = k; t >= ctx.p; t /= ctx.p) ++ilog;
    if (k > 1 && k * vu - ilog >= n) break;
    term = term * u;  // u^k
    Padic tk = term / Padic::exact(ctx, k);
    if (k % 2 == 0) tk = -tk;
    sum = sum + tk;
    ++k;
    if (k > 64 * (n + 2)) throw precision_error("log series did not terminate");
  }
  return sum.reduced(n);
}

// Falling-factorial binomial coefficient binom(x, j) of a p-adic scalar.
// For x in Z_p the value is integral; the computed precision reflects the
// division by j!.
inline Padic padic_binomial(const Padic& x, long j) {
  const PadicContext& ctx = x.context();
  if (j < 0) throw domain_error("negative binomial index");
  Padic prod = Padic::one(ctx);
  for (long i = 0; i < j; ++i) prod = prod * (x - Padic::exact(ctx, i));
  mpz_class jf;
  mpz_fac_ui(jf.get_mpz_t(), static_cast<unsigned long>(j));
  return prod / Padic::exact(ctx, jf);
}

// <b> = b / omega(b), the 1-unit part.
inline Padic one_unit_part(const Padic& b, long n = 0) {
  const PadicContext& ctx = b.context();
  if (n <= 0) n = ctx.N;
  return (b / teichmuller(b, n)).reduced(n);
}

// eta(b) = log<b> / log(1+p).  Additive: eta(b1 b2) = eta(b1) + eta(b2).
inline Padic eta(const Padic& b, long n = 0) {
  const PadicContext& ctx = b.context();
  if (n <= 0) n = ctx.N;
  long guard = 2;
  Padic ub = one_unit_part(b, n + guard);
  Padic num = padic_log1p(ub - Padic::one(ctx), n + guard);
  Padic den = padic_log1p(Padic::exact(ctx, ctx.p), n + guard);
  return (num / den).reduced(n);
}

}  // namespace padiclab

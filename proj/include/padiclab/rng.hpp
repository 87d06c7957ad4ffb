#pragma once

#include <gmpxx.h>

#include <random>

#include "padiclab/padic.hpp"

// Seeded deterministic randomness for the property suites. The generator is
// the standard 64-bit Mersenne Twister (mt19937_64, as specified in ISO C++
// [rand.eng.mers]); bounded draws reduce the raw 64-bit output modulo the
// bound, so identical seeds give identical streams on every platform.

namespace padiclab {

class SuiteRng {
 public:
  explicit SuiteRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform-ish draw in [0, bound); bound > 0
  std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  mpz_class mpz_below(const mpz_class& bound) {
    if (bound <= 0) throw domain_error("mpz_below needs positive bound");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    mpz_class r = 0;
    for (size_t got = 0; got < bits + 64; got += 64) {
      r <<= 64;
      r += mpz_class(static_cast<unsigned long>(eng_()));
    }
    return detail::mod(r, bound);
  }

  // exact integer scalar drawn uniformly mod p^N
  Padic integer(const PadicContext& ctx) {
    return Padic::exact(ctx, mpz_below(ctx.pk(ctx.N)));
  }

  // exact unit scalar mod p^N
  Padic unit(const PadicContext& ctx) {
    while (true) {
      mpz_class z = mpz_below(ctx.pk(ctx.N));
      if (z % ctx.p != 0) return Padic::exact(ctx, z);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace padiclab

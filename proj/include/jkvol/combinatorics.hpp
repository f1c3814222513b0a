#pragma once

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"

namespace jkvol {

// k! as an exact integer.
inline Integer factorial(long k) {
    if (k < 0) throw ArgumentError("factorial: negative argument");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

// Falling factorial z^[k] = z (z-1) ... (z-k+1) for integer z and k >= 0; empty product is 1.
inline Integer falling_factorial(const Integer& z, long k) {
    if (k < 0) throw ArgumentError("falling_factorial: negative exponent");
    Integer r = 1;
    Integer f = z;
    for (long j = 0; j < k; ++j) {
        r *= f;
        f -= 1;
    }
    return r;
}

inline Integer falling_factorial(long z, long k) { return falling_factorial(Integer(z), k); }

// Generalized binomial coefficient C(z, k) = z^[k] / k! for integer z of either sign;
// C(z, k) = 0 for k < 0. For z >= 0 this reduces to the classical coefficient with
// C(z, k) = 0 when k > z; for z < 0 it is nonzero for all k >= 0.
inline Integer gen_binomial(const Integer& z, long k) {
    if (k < 0) return Integer(0);
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline Integer gen_binomial(long z, long k) { return gen_binomial(Integer(z), k); }

inline Rational gen_binomial_q(long z, long k) { return Rational(gen_binomial(z, k)); }

} // namespace jkvol

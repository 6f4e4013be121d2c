#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dl {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonicalized rational num/den.
inline Rational ratio(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;  // canonical input stays canonical under powers
}

inline BigInt int_pow(long base, unsigned long e) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
    return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// "p" or "p/q".
inline std::string to_fraction(const Rational& r) { return r.get_str(); }

}  // namespace dl

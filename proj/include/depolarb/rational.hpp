#pragma once

#include <gmpxx.h>

namespace depolarb {

using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace depolarb

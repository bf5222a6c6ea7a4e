#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cmf {

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class(num, den) does not canonicalize; GMP arithmetic on a
// non-canonical rational is undefined.  All two-argument constructions go
// through here.
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational frac(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Fractional part in [0, 1).
inline Rational frac_mod1(const Rational& x) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rational r = x - Rational(fl);
    r.canonicalize();
    return r;
}

// Second Bernoulli polynomial B2(x) = x^2 - x + 1/6.
inline Rational bernoulli2(const Rational& x) {
    Rational r = x * x - x + Rational(1, 6);
    r.canonicalize();
    return r;
}

// B2(<x>)/2, the q-order of a Siegel function with first coordinate x.
inline Rational b2_half_frac(const Rational& x) {
    return bernoulli2(frac_mod1(x)) / 2;
}

inline long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline Integer mod_pos(const Integer& a, const Integer& n) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square_free(const Integer& n_in) {
    Integer n = abs(n_in);
    if (n == 0) return false;
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

}  // namespace cmf

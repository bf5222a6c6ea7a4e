#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "cmf/ball.hpp"
#include "cmf/error.hpp"
#include "cmf/quadsurd.hpp"
#include "cmf/rational.hpp"

namespace cmf {

// Coordinate (r1, r2) = (a/n, b/n) of a Siegel function, reduced mod Z^2 to
// 0 <= a, b < n and with gcd(a, b, n) divided out.  The pair (0, 0) is not a
// valid coordinate.
struct SiegelIndex {
    long a, b, n;

    SiegelIndex(long a_, long b_, long n_) {
        if (n_ <= 0) throw domain_error("SiegelIndex denominator must be positive");
        a = mod_pos(a_, n_);
        b = mod_pos(b_, n_);
        n = n_;
        if (a == 0 && b == 0) throw domain_error("SiegelIndex lies in Z^2");
        long g = std::gcd(std::gcd(a, b), n);
        if (g > 1) {
            a /= g;
            b /= g;
            n /= g;
        }
    }

    static SiegelIndex from_rationals(const Rational& r1, const Rational& r2) {
        Rational f1 = frac_mod1(r1), f2 = frac_mod1(r2);
        Integer den = lcm(f1.get_den(), f2.get_den());
        Integer na = f1.get_num() * (den / f1.get_den());
        Integer nb = f2.get_num() * (den / f2.get_den());
        if (!na.fits_slong_p() || !nb.fits_slong_p() || !den.fits_slong_p())
            throw domain_error("SiegelIndex out of range");
        return SiegelIndex(na.get_si(), nb.get_si(), den.get_si());
    }

    Rational r1() const { return frac(a, n); }
    Rational r2() const { return frac(b, n); }

    // Numerators at an enclosing level m (m must be a multiple of n).
    std::pair<long, long> at_level(long m) const {
        if (m % n != 0) throw domain_error("index denominator does not divide level");
        long k = m / n;
        return {a * k, b * k};
    }

    bool operator==(const SiegelIndex& o) const { return a == o.a && b == o.b && n == o.n; }
    bool operator<(const SiegelIndex& o) const {
        return std::tie(n, a, b) < std::tie(o.n, o.a, o.b);
    }

    std::string str() const {
        return "(" + std::to_string(a) + "/" + std::to_string(n) + "," + std::to_string(b) +
               "/" + std::to_string(n) + ")";
    }
};

// Index together with an exact rational phase t, meaning a factor e^{2 pi i t}.
struct PhasedIndex {
    SiegelIndex index;
    Rational phase;  // reduced, in [0, 1)
};

// q-order of g_{(r1,r2)}: B2(<r1>)/2.
inline Rational order_q(const SiegelIndex& idx) {
    return b2_half_frac(idx.r1());
}

namespace detail {

// sum_{k=1}^{c-1} (k/c - 1/2)(<kd/c> - 1/2), exact.
inline Rational dedekind_like_sum(long c, long d) {
    Rational s(0);
    for (long k = 1; k < c; ++k) {
        Rational left = frac(k, c) - frac(1, 2);
        Rational right = frac(mod_pos(k * d, c), c) - frac(1, 2);
        s += left * right;
    }
    s.canonicalize();
    return s;
}

// Reduce a raw rational pair to its canonical index, accumulating the exact
// translation phase g_{(v+s)} = (-1)^{s1 s2 + s1 + s2} e^{-pi i (s1 v2 - s2 v1)} g_v.
inline PhasedIndex canonicalize_with_phase(const Rational& u1, const Rational& u2,
                                           Rational t) {
    Rational v1 = frac_mod1(u1), v2 = frac_mod1(u2);
    Rational s1q = u1 - v1, s2q = u2 - v2;
    Integer s1 = s1q.get_num(), s2 = s2q.get_num();  // denominators are 1
    Rational sign = Rational(mod_pos(Integer(s1 * s2 + s1 + s2), Integer(2))) / 2;
    Rational twist = -(Rational(s1) * v2 - Rational(s2) * v1) / 2;
    t = frac_mod1(t + sign + twist);
    return PhasedIndex{SiegelIndex::from_rationals(v1, v2), t};
}

}  // namespace detail

// Exact transformation g_idx(gamma tau) = e^{2 pi i t} g_idx'(tau) under
// gamma in SL2(Z).  For c > 0 this is the eta^2-multiplier formula; c <= 0 is
// reduced to it via gamma -> -gamma (same Moebius action) and the identity
// g_{(-r1,-r2)} = -g_{(r1,r2)}, which the translation phase absorbs.
inline PhasedIndex transform_sl2(const SiegelIndex& idx, long a, long b, long c, long d) {
    if (a * d - b * c != 1) throw domain_error("transform_sl2 requires determinant 1");
    if (c < 0 || (c == 0 && a < 0)) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    Rational r1 = idx.r1(), r2 = idx.r2();
    if (c == 0) {
        // a = d = 1: tau -> tau + b, exact phase b/12.
        Rational u1 = r1;
        Rational u2 = r2 + r1 * b;
        return detail::canonicalize_with_phase(u1, u2, frac(b, 12));
    }
    Rational u1 = r1 * a + r2 * c;
    Rational u2 = r1 * b + r2 * d;
    Rational t = frac(3, 4) + frac(a + d, 12 * c) - detail::dedekind_like_sum(c, d);
    return detail::canonicalize_with_phase(u1, u2, t);
}

namespace detail {

// Smallest M with 4 A^M / (1 - A) < 2^{-prec-4}, A an exact upper bound of |q|.
// Throws when M would exceed the configured cap.
inline long choose_truncation(const mpfr_t a_up, long prec) {
    constexpr long kCap = 1000000;
    if (mpfr_sgn(a_up) <= 0) return 1;
    if (mpfr_cmp_ui(a_up, 1) >= 0) throw precision_error("|q| not certified below 1");

    mpfr_t thr, one_minus, pw, lhs;
    mpfr_inits2(64, thr, one_minus, pw, lhs, (mpfr_ptr) nullptr);
    mpfr_set_ui_2exp(thr, 1, -(prec + 4), MPFR_RNDD);
    mpfr_ui_sub(one_minus, 1, a_up, MPFR_RNDD);

    auto ok = [&](long m) {
        mpfr_pow_ui(pw, a_up, static_cast<unsigned long>(m), MPFR_RNDU);
        mpfr_mul_2ui(pw, pw, 2, MPFR_RNDU);
        mpfr_div(lhs, pw, one_minus, MPFR_RNDU);
        return mpfr_cmp(lhs, thr) < 0;
    };

    double la = mpfr_get_d(a_up, MPFR_RNDU);
    long est = 1;
    if (la > 0 && la < 1) {
        double need = (prec + 7 - std::log2(1.0 - la)) / (-std::log2(la));
        if (need > 0 && need < 2.0 * kCap) est = static_cast<long>(need) + 1;
        if (need >= 2.0 * kCap) est = kCap + 1;
    }
    // exponential overshoot from the estimate, then binary search for the
    // smallest certified index; lo is always a failing value (0 = sentinel)
    long lo = 0, hi = std::max<long>(1, est);
    while (hi <= kCap && !ok(hi)) {
        lo = hi;
        hi += (hi < 16 ? 1 : hi / 8);
    }
    if (hi > kCap) {
        mpfr_clears(thr, one_minus, pw, lhs, (mpfr_ptr) nullptr);
        throw precision_error("q-product truncation index exceeds cap");
    }
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    mpfr_clears(thr, one_minus, pw, lhs, (mpfr_ptr) nullptr);
    return hi;
}

// Ball 1 +/- 2 * (4 A^M / (1-A)) enclosing the omitted tail product.
inline RealBall tail_factor(const mpfr_t a_up, long m, mpfr_prec_t prec) {
    RealBall one = RealBall::from_int(1, prec);
    if (mpfr_sgn(a_up) <= 0) return one;
    mpfr_t pw, one_minus, bound;
    mpfr_inits2(64, pw, one_minus, bound, (mpfr_ptr) nullptr);
    mpfr_pow_ui(pw, a_up, static_cast<unsigned long>(m), MPFR_RNDU);
    mpfr_mul_2ui(pw, pw, 2, MPFR_RNDU);
    mpfr_ui_sub(one_minus, 1, a_up, MPFR_RNDD);
    mpfr_div(bound, pw, one_minus, MPFR_RNDU);
    mpfr_mul_2ui(bound, bound, 1, MPFR_RNDU);
    RealBall f = one.with_radius_upper(bound);
    mpfr_clears(pw, one_minus, bound, (mpfr_ptr) nullptr);
    return f;
}

// Exact upper bound of |z| as an mpfr value at radius precision.
inline void abs_upper(mpfr_t out, const ComplexBall& z) {
    RealBall a = z.abs();
    mpfr_add(out, a.mid(), a.rad(), MPFR_RNDU);
}

}  // namespace detail

// Siegel function g_{(r1,r2)}(tau) as a certified enclosure.  The leading
// factor -q^{B2(r1)/2} e^{pi i r2 (r1-1)} is assembled from one exact rational
// phase and one exact q-power before any rounding happens.
inline ComplexBall eval_siegel(const SiegelIndex& idx, const QuadSurd& tau, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 64;
    Rational r1 = idx.r1(), r2 = idx.r2();

    Rational lead_phase = frac_mod1(frac(1, 2) + r2 * (r1 - 1) / 2);
    ComplexBall lead = cm_qpow(tau, b2_half_frac(r1), lead_phase, wp);

    ComplexBall q = exp_2pi_i(tau, wp);
    ComplexBall qz = cm_qpow(tau, r1, r2, wp);
    ComplexBall qzi = cm_qpow(tau, -r1, -r2, wp);

    mpfr_t a_up;
    mpfr_init2(a_up, RealBall::kRadiusPrec);
    detail::abs_upper(a_up, q);
    long m;
    try {
        m = detail::choose_truncation(a_up, prec);
    } catch (...) {
        mpfr_clear(a_up);
        throw;
    }

    ComplexBall one = ComplexBall::from_int(1, wp);
    ComplexBall prod = one - qz;
    ComplexBall qn = one;
    for (long k = 1; k <= m; ++k) {
        // Sequential multiplication lets the componentwise radius grow by
        // |Re q| + |Im q| (> 1 near arg pi/4) per step; resynchronize with a
        // binary powering every 32 terms to keep it polynomial.
        qn = (k % 32 == 0) ? q.pow_int(k) : qn * q;
        prod = prod * (one - qn * qz);
        prod = prod * (one - qn * qzi);
    }
    prod = prod * detail::tail_factor(a_up, m, wp);
    mpfr_clear(a_up);

    return lead * prod;
}

// Dedekind eta without Siegel's sqrt(2 pi) zeta_8 prefactor:
// q^{1/24} prod (1 - q^n).  All Weber quotients are unaffected by the
// normalization since the prefactor cancels.
inline ComplexBall eval_eta_reduced(const QuadSurd& tau, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 64;
    ComplexBall lead = cm_qpow(tau, frac(1, 24), Rational(0), wp);
    ComplexBall q = exp_2pi_i(tau, wp);

    mpfr_t a_up;
    mpfr_init2(a_up, RealBall::kRadiusPrec);
    detail::abs_upper(a_up, q);
    long m;
    try {
        m = detail::choose_truncation(a_up, prec);
    } catch (...) {
        mpfr_clear(a_up);
        throw;
    }

    ComplexBall one = ComplexBall::from_int(1, wp);
    ComplexBall prod = one;
    ComplexBall qn = one;
    for (long k = 1; k <= m; ++k) {
        qn = (k % 32 == 0) ? q.pow_int(k) : qn * q;
        prod = prod * (one - qn);
    }
    prod = prod * detail::tail_factor(a_up, m, wp);
    mpfr_clear(a_up);
    return lead * prod;
}

enum class WeberKind { f, f1, f2 };

// Weber functions as eta quotients; the zeta_48^{-1} factor of f is exact.
inline ComplexBall eval_weber(WeberKind kind, const QuadSurd& tau, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    ComplexBall eta_tau = eval_eta_reduced(tau, wp);
    switch (kind) {
        case WeberKind::f: {
            QuadSurd t2 = tau.linear_map(frac(1, 2), frac(1, 2));
            return unit_phase(frac(-1, 48), wp) * (eval_eta_reduced(t2, wp) / eta_tau);
        }
        case WeberKind::f1: {
            QuadSurd t2 = tau.linear_map(frac(1, 2), Rational(0));
            return eval_eta_reduced(t2, wp) / eta_tau;
        }
        case WeberKind::f2: {
            QuadSurd t2 = tau.linear_map(Rational(2), Rational(0));
            RealBall sqrt2 = RealBall::sqrt_integer(Integer(2), wp);
            return (eval_eta_reduced(t2, wp) / eta_tau) * sqrt2;
        }
    }
    throw domain_error("unknown Weber kind");
}

// gamma_2(tau) = (g^{12} + 16)/g^4 with g = g_{(0,1/2)}(tau); the cube root of
// j with real Fourier expansion starting q^{-1/3}.
inline ComplexBall eval_gamma2(const QuadSurd& tau, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    ComplexBall g = eval_siegel(SiegelIndex(0, 1, 2), tau, wp);
    ComplexBall g4 = g.pow_int(4);
    ComplexBall g12 = g4.pow_int(3);
    ComplexBall num = g12 + ComplexBall::from_int(16, wp);
    return num / g4;
}

inline ComplexBall eval_j(const QuadSurd& tau, mpfr_prec_t prec) {
    return eval_gamma2(tau, prec + 32).pow_int(3);
}

}  // namespace cmf

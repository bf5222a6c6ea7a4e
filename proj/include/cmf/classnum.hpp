#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmf/ball.hpp"
#include "cmf/error.hpp"
#include "cmf/invariants.hpp"
#include "cmf/quadforms.hpp"

namespace cmf {

// A = |e^{2 pi i tau}| at a CM point: e^{-pi sqrt(|d|)}.
inline RealBall cm_modulus(long d, mpfr_prec_t prec) {
    if (d >= 0) throw domain_error("cm_modulus requires d < 0");
    RealBall root = RealBall::sqrt_integer(Integer(-d), prec);
    return (-(RealBall::pi(prec) * root)).exp();
}

// |g_{(a,b)}(tau)| <= A^{B2(a)/2} e^{2 A^a / (1-A)} for 0 < a <= 1/2.
inline RealBall siegel_bound_a(const Rational& a, const RealBall& A) {
    if (!(a > 0 && a <= frac(1, 2)))
        throw domain_error("siegel_bound_a requires 0 < a <= 1/2");
    if (!A.is_positive() || !A.certainly_less_one())
        throw precision_error("siegel_bound_a requires 0 < A < 1 certified");
    mpfr_prec_t p = A.prec();
    RealBall one = RealBall::from_int(1, p);
    RealBall expo = A.pow_rational(a).mul_2exp(1) / (one - A);
    return A.pow_rational(bernoulli2(a) / 2) * expo.exp();
}

// |g_{(0,b)}(tau)| <= A^{1/12} |1 - e^{2 pi i b}| e^{2A/(1-A)} for 0 < b < 1.
inline RealBall siegel_bound_0b(const Rational& b, const RealBall& A) {
    if (!(b > 0 && b < 1)) throw domain_error("siegel_bound_0b requires 0 < b < 1");
    if (!A.is_positive() || !A.certainly_less_one())
        throw precision_error("siegel_bound_0b requires 0 < A < 1 certified");
    mpfr_prec_t p = A.prec();
    RealBall one = RealBall::from_int(1, p);
    RealBall gap = (ComplexBall::from_int(1, p) - unit_phase(b, p)).abs();
    RealBall expo = A.mul_2exp(1) / (one - A);
    return A.pow_rational(frac(1, 12)) * gap * expo.exp();
}

enum class BoundCase { not_inert_2, inert2_ram3, cn2_split2 };

inline std::string bound_case_name(BoundCase c) {
    switch (c) {
        case BoundCase::not_inert_2: return "not_inert_2";
        case BoundCase::inert2_ram3: return "inert2_ram3";
        case BoundCase::cn2_split2: return "cn2_split2";
    }
    return "?";
}

// Certified upper bound for |Norm|^{1/12}; passes only when the whole
// enclosure lies strictly below 1.
struct BoundCertificate {
    long d;
    BoundCase case_tag;
    RealBall bound_value;
    bool passes;
    long precision_bits;
};

namespace detail {

// 2 A^{1/12} e^{2A/(1-A)}, times A^{-1/24} e^{2 sqrt(A)/(1-A)} in the
// d = 0 mod 4 subcase.
inline RealBall case_i_bound(const RealBall& A, bool subcase_0mod4) {
    mpfr_prec_t p = A.prec();
    RealBall one = RealBall::from_int(1, p);
    RealBall denom = one - A;
    RealBall b = A.pow_rational(frac(1, 12)).mul_2exp(1) * (A.mul_2exp(1) / denom).exp();
    if (subcase_0mod4)
        b = b * A.pow_rational(frac(-1, 24)) *
            (A.pow_rational(frac(1, 2)).mul_2exp(1) / denom).exp();
    return b;
}

// sqrt(3) A^{1/36} e^{(2A + 4A^{1/3})/(1-A)}.
inline RealBall case_ii_bound(const RealBall& A) {
    mpfr_prec_t p = A.prec();
    RealBall one = RealBall::from_int(1, p);
    RealBall expo =
        (A.mul_2exp(1) + A.pow_rational(frac(1, 3)).mul_2exp(2)) / (one - A);
    return RealBall::sqrt_integer(Integer(3), p) * A.pow_rational(frac(1, 36)) * expo.exp();
}

// max over the two bottom-row cases of the class-number-two split bound:
//   r = 0: 4 A^{1/12} e^{2A/(1-A) - pi sqrt3/12 + 2 e^{-pi sqrt3}/(1-e^{-pi sqrt3})}
//   r = 1: 2 A^{1/12 - 1/48} e^{2A/(1-A) + 2 e^{-pi sqrt3/2}/(1-e^{-pi sqrt3})}
inline RealBall cn2_bound(const RealBall& A) {
    mpfr_prec_t p = A.prec();
    RealBall one = RealBall::from_int(1, p);
    RealBall pi_s3 = RealBall::pi(p) * RealBall::sqrt_integer(Integer(3), p);
    RealBall e_ps3 = (-pi_s3).exp();
    RealBall e_ps3h = (-(pi_s3.mul_rational(frac(1, 2)))).exp();
    RealBall common = A.mul_2exp(1) / (one - A);

    RealBall exp0 = common - pi_s3.mul_rational(frac(1, 12)) +
                    e_ps3.mul_2exp(1) / (one - e_ps3);
    RealBall b0 = A.pow_rational(frac(1, 12)).mul_2exp(2) * exp0.exp();

    RealBall exp1 = common + e_ps3h.mul_2exp(1) / (one - e_ps3);
    RealBall b1 = A.pow_rational(frac(1, 12) - frac(1, 48)).mul_2exp(1) * exp1.exp();

    // enclosure of max(b0, b1) via endpoints
    mpfr_t lo0, hi0, lo1, hi1, lo, hi;
    mpfr_inits2(p + 8, lo0, hi0, lo1, hi1, lo, hi, (mpfr_ptr) nullptr);
    mpfr_sub(lo0, b0.mid(), b0.rad(), MPFR_RNDD);
    mpfr_add(hi0, b0.mid(), b0.rad(), MPFR_RNDU);
    mpfr_sub(lo1, b1.mid(), b1.rad(), MPFR_RNDD);
    mpfr_add(hi1, b1.mid(), b1.rad(), MPFR_RNDU);
    mpfr_max(lo, lo0, lo1, MPFR_RNDD);
    mpfr_max(hi, hi0, hi1, MPFR_RNDU);
    RealBall r = RealBall::from_endpoints(lo, hi, p);
    mpfr_clears(lo0, hi0, lo1, hi1, lo, hi, (mpfr_ptr) nullptr);
    return r;
}

inline BoundCertificate make_certificate(long d, BoundCase tag, const RealBall& bound,
                                         mpfr_prec_t prec) {
    return {d, tag, bound, bound.certainly_less_one(), static_cast<long>(prec)};
}

}  // namespace detail

// Case (i): class number one with 2 not inert; valid for fundamental d <= -31.
inline BoundCertificate certify_case_i(long d, mpfr_prec_t prec = 128) {
    require_fundamental(d);
    if (d > -31) throw domain_error("certify_case_i requires d <= -31");
    if (kronecker_symbol(d, 2) == -1) throw domain_error("certify_case_i requires 2 not inert");
    RealBall A = cm_modulus(d, prec);
    bool sub0 = mod_pos(d, 4L) == 0;
    return detail::make_certificate(d, BoundCase::not_inert_2, detail::case_i_bound(A, sub0),
                                    prec);
}

// Case (ii): 2 inert and 3 ramified (d = 21 mod 24); valid for d <= -51.
inline BoundCertificate certify_case_ii(long d, mpfr_prec_t prec = 128) {
    require_fundamental(d);
    if (d > -51) throw domain_error("certify_case_ii requires d <= -51");
    if (mod_pos(d, 24L) != 21) throw domain_error("certify_case_ii requires d = 21 mod 24");
    RealBall A = cm_modulus(d, prec);
    return detail::make_certificate(d, BoundCase::inert2_ram3, detail::case_ii_bound(A), prec);
}

// Class number two with 2 split (d = 1 mod 8, h = 2); valid for d <= -31.
inline BoundCertificate certify_cn2_split(long d, mpfr_prec_t prec = 128) {
    require_fundamental(d);
    if (d > -31) throw domain_error("certify_cn2_split requires d <= -31");
    if (mod_pos(d, 8L) != 1) throw domain_error("certify_cn2_split requires d = 1 mod 8");
    if (class_number(d) != 2) throw domain_error("certify_cn2_split requires class number 2");
    RealBall A = cm_modulus(d, prec);
    return detail::make_certificate(d, BoundCase::cn2_split2, detail::cn2_bound(A), prec);
}

// Tail certificates: each bound is monotone increasing in A and A = e^{-pi
// sqrt(|d|)} decreases with |d|, so a pass at the window edge covers every
// deeper discriminant of the case.  The edge value of A is used directly.
inline BoundCertificate tail_certificate_case_i(mpfr_prec_t prec = 128) {
    RealBall A = cm_modulus(-31, prec);
    return detail::make_certificate(-31, BoundCase::not_inert_2,
                                    detail::case_i_bound(A, true), prec);
}

inline BoundCertificate tail_certificate_case_ii(mpfr_prec_t prec = 128) {
    RealBall A = cm_modulus(-51, prec);
    return detail::make_certificate(-51, BoundCase::inert2_ram3, detail::case_ii_bound(A),
                                    prec);
}

inline BoundCertificate tail_certificate_cn2_split(mpfr_prec_t prec = 128) {
    RealBall A = cm_modulus(-31, prec);
    return detail::make_certificate(-31, BoundCase::cn2_split2, detail::cn2_bound(A), prec);
}

// ---- Heegner's Diophantine search ----

// One solution of the coefficient system: min(x, K) = X^3 + aX^2 + bX + c with
// c^4 = 16 and p4 = sum x_i^4 = 0; gamma is the recognized coefficient of
// min(x^4) = X^3 - gamma X - 16.
struct HeegnerHit {
    long a;
    Integer b;
    long c;
    Integer gamma;
};

namespace detail {

// Power sums of the roots of X^3 + aX^2 + bX + c via Newton's identities.
inline std::vector<Integer> power_sums(const Integer& a, const Integer& b, const Integer& c,
                                       int upto) {
    Integer e1 = -a, e2 = b, e3 = -c;
    std::vector<Integer> p(upto + 1);
    p[0] = 3;
    if (upto >= 1) p[1] = e1;
    if (upto >= 2) p[2] = e1 * p[1] - 2 * e2;
    if (upto >= 3) p[3] = e1 * p[2] - e2 * p[1] + 3 * e3;
    for (int k = 4; k <= upto; ++k) p[k] = e1 * p[k - 1] - e2 * p[k - 2] + e3 * p[k - 3];
    return p;
}

// Characteristic polynomial of multiplication by x^4 on Z[x]/(x^3+ax^2+bx+c):
// an exact independent route to min(x^4).  Returns (t1, t2, t3) with
// char(X) = X^3 - t1 X^2 + t2 X - t3.
inline std::array<Integer, 3> mult_by_x4_charpoly(const Integer& a, const Integer& b,
                                                  const Integer& c) {
    // x^4 = al x^2 + be x + de mod (x^3 + a x^2 + b x + c)
    Integer al = a * a - b, be = a * b - c, de = a * c;
    // columns: y*1, y*x, y*x^2 in basis {1, x, x^2}
    Integer m00 = de, m10 = be, m20 = al;
    Integer m01 = -al * c, m11 = de - al * b, m21 = be - al * a;
    Integer m02 = -(be - al * a) * c;
    Integer m12 = -al * c - (be - al * a) * b;
    Integer m22 = (de - al * b) - (be - al * a) * a;

    Integer t1 = m00 + m11 + m22;
    Integer t2 = (m00 * m11 - m01 * m10) + (m00 * m22 - m02 * m20) + (m11 * m22 - m12 * m21);
    Integer t3 = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
                 m02 * (m10 * m21 - m11 * m20);
    return {t1, t2, t3};
}

}  // namespace detail

// Enumerate (a, b, c) with c = +-2 (forced by c^4 = 16) and |a| <= bound_a,
// solving p4 = a^4 - 4a^2 b + 2b^2 + 4ac = 0 for integral b; requires
// a(a^3 - 4c) = 2u^2, then b = a^2 +- u.  Every hit's min(x^4) is recomputed
// through the multiplication-matrix characteristic polynomial and must match
// X^3 - gamma X - 16 (the fast path cross-checked against the exact oracle).
inline std::vector<HeegnerHit> heegner_hits(long bound_a) {
    if (bound_a < 20) throw domain_error("heegner search bound must be >= 20");
    std::vector<HeegnerHit> hits;
    for (long a = -bound_a; a <= bound_a; ++a) {
        for (long c : {2L, -2L}) {
            Integer m = Integer(a) * (Integer(a) * a * a - 4 * c);
            if (m < 0 || mod_pos(m, Integer(2)) != 0) continue;
            Integer half = m / 2;
            if (mpz_perfect_square_p(half.get_mpz_t()) == 0) continue;
            Integer u = sqrt(half);
            for (int sign = 0; sign < (u == 0 ? 1 : 2); ++sign) {
                Integer b = Integer(a) * a + (sign == 0 ? u : -u);
                auto p = detail::power_sums(Integer(a), b, Integer(c), 8);
                if (p[4] != 0) throw domain_error("heegner: p4 != 0 on a hit");
                Integer gamma_fast = p[8] / 2;
                auto [t1, t2, t3] = detail::mult_by_x4_charpoly(Integer(a), b, Integer(c));
                if (t1 != 0 || t3 != 16 || t2 != -gamma_fast)
                    throw domain_error("heegner: fast path disagrees with charpoly oracle");
                hits.push_back({a, b, c, gamma_fast});
            }
        }
    }
    return hits;
}

// The candidate gamma_2 values themselves, deduplicated.
inline std::vector<Integer> heegner_search(long bound_a) {
    std::set<Integer> out;
    for (const HeegnerHit& h : heegner_hits(bound_a)) out.insert(h.gamma);
    return {out.begin(), out.end()};
}

// Search for the fundamental d = 5 mod 8, d != 0 mod 3 whose gamma_2(theta_K)
// encloses gamma.  gamma = 0 is the excluded field Q(sqrt(-3)) (it fails the
// 3-ramification filter but is the classical row with gamma_2 = 0).
inline std::optional<long> match_discriminant(const Integer& gamma, mpfr_prec_t prec = 192) {
    if (gamma == 0) return -3;
    double lg = 3.0 * std::log(std::abs(gamma.get_d()));
    double w = std::pow((std::log(2000.0) + std::max(0.0, lg)) / 3.14159, 2.0) + 2.0;
    long window = static_cast<long>(w) + 1;
    for (long d = -7; d >= -window; --d) {
        if (!is_fundamental(d)) continue;
        if (mod_pos(d, 8L) != 5 || mod_pos(d, 3L) == 0) continue;
        for (mpfr_prec_t p = prec; p <= 4096; p *= 2) {
            ComplexBall g2 = eval_gamma2(theta_K(d), p);
            if (g2.contains_integer_value(gamma)) return d;
            RealBall diff = g2.re() - RealBall::from_integer(gamma, p);
            if (diff.is_nonzero() || !g2.im().contains_zero()) break;  // certified mismatch
        }
    }
    return std::nullopt;
}

// ---- search pipelines ----

struct ClassNumberOneResult {
    std::vector<long> case_i;    // 2 not inert
    std::vector<long> case_ii;   // 2 inert, 3 ramified
    std::vector<long> case_iii;  // 2 inert, 3 not ramified
    std::vector<Integer> spurious_gamma;  // candidates with no CM realization
    std::vector<BoundCertificate> certificates;
};

inline ClassNumberOneResult class_number_one_search(long heegner_bound = 1000,
                                                    mpfr_prec_t prec = 128) {
    ClassNumberOneResult out;

    // (i) window -31 < d <= -7, exact class numbers
    for (long d = -7; d > -31; --d) {
        if (!is_fundamental(d)) continue;
        if (kronecker_symbol(d, 2) == -1) continue;
        if (class_number(d) == 1) out.case_i.push_back(d);
    }
    // (ii) window -51 < d <= -7, d = 21 mod 24
    for (long d = -7; d > -51; --d) {
        if (!is_fundamental(d)) continue;
        if (mod_pos(d, 24L) != 21) continue;
        if (class_number(d) == 1) out.case_ii.push_back(d);
    }
    // (iii) Heegner pipeline
    std::set<long> found;
    for (const Integer& gamma : heegner_search(heegner_bound)) {
        std::optional<long> d = match_discriminant(gamma);
        if (!d) {
            out.spurious_gamma.push_back(gamma);
            continue;
        }
        if (*d <= -7 && class_number(*d) == 1) found.insert(*d);
    }
    out.case_iii.assign(found.rbegin(), found.rend());  // -11 first, -163 last

    // tail certificates: window edges cover all deeper d by A-monotonicity,
    // per-d samples document the first stretch of each tail.
    out.certificates.push_back(tail_certificate_case_i(prec));
    out.certificates.push_back(tail_certificate_case_ii(prec));
    for (long d = -31; d >= -100; --d) {
        if (!is_fundamental(d)) continue;
        if (kronecker_symbol(d, 2) != -1) out.certificates.push_back(certify_case_i(d, prec));
    }
    for (long d = -51; d >= -200; --d) {
        if (!is_fundamental(d)) continue;
        if (mod_pos(d, 24L) == 21) out.certificates.push_back(certify_case_ii(d, prec));
    }
    return out;
}

struct ClassNumberTwoResult {
    std::vector<long> split_two;  // d = 1 mod 8, h = 2
    std::vector<BoundCertificate> certificates;
};

inline ClassNumberTwoResult class_number_two_split_search(mpfr_prec_t prec = 128) {
    ClassNumberTwoResult out;
    for (long d = -7; d > -31; --d) {
        if (!is_fundamental(d)) continue;
        if (mod_pos(d, 8L) != 1) continue;
        if (class_number(d) == 2) out.split_two.push_back(d);
    }
    out.certificates.push_back(tail_certificate_cn2_split(prec));
    for (long d = -31; d >= -500; --d) {
        if (!is_fundamental(d)) continue;
        if (mod_pos(d, 8L) == 1 && class_number(d) == 2)
            out.certificates.push_back(certify_cn2_split(d, prec));
    }
    return out;
}

// The eighteen class-number-two fundamental discriminants, by exact enumeration.
inline std::vector<long> class_number_two_list(long lo = -500) {
    std::vector<long> out;
    for (long d = -1; d >= lo; --d)
        if (is_fundamental(d) && class_number(d) == 2) out.push_back(d);
    return out;
}

}  // namespace cmf

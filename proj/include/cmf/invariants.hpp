#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmf/ball.hpp"
#include "cmf/error.hpp"
#include "cmf/reciprocity.hpp"
#include "cmf/siegel.hpp"

namespace cmf {

namespace detail {

// One rational prime's contribution to a conductor: the prime ideals above p
// with their exponents.  Split primes carry two independent exponents.
struct PrimePart {
    long p;
    int splitting;  // +1 split, -1 inert, 0 ramified
    long e1;        // exponent at the first prime ideal
    long e2;        // exponent at the second (split case only)
};

inline std::vector<PrimePart> factor_conductor(long n, long d) {
    std::vector<PrimePart> parts;
    long rest = n;
    for (long p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        long e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        int sp = kronecker_symbol(d, p);
        // v_P((p^e)) is e at each prime over a split/inert p, 2e at a ramified one.
        long v = (sp == 0) ? 2 * e : e;
        parts.push_back({p, sp, v, sp == 1 ? v : 0});
    }
    return parts;
}

inline Integer phi_prime_power(long p, int splitting, long e) {
    if (e == 0) return 1;
    Integer norm = (splitting == -1) ? Integer(p) * p : Integer(p);
    Integer r = norm - 1;
    for (long i = 1; i < e; ++i) r *= norm;
    return r;
}

inline Integer phi_conductor(const std::vector<PrimePart>& parts) {
    Integer r = 1;
    for (const auto& part : parts) {
        r *= phi_prime_power(part.p, part.splitting, part.e1);
        if (part.splitting == 1) r *= phi_prime_power(part.p, part.splitting, part.e2);
    }
    return r;
}

// Valuations of (u - 1) for each nontrivial unit u of O_K, expressed through
// the ideals (2), the ramified prime over 2 (d = -4), and the ramified prime
// over 3 (d = -3).  v_P(u-1) at a prime P over p is then val2 * v_P(2) for
// the (2)-type entries, or the listed exact valuation.
enum class UnitIdeal { two, ram2, ram3, unit_ideal };

inline std::vector<UnitIdeal> unit_minus_one_ideals(long d) {
    // Order: the units other than 1.
    if (d == -4) return {UnitIdeal::two, UnitIdeal::ram2, UnitIdeal::ram2};  // -1, i, -i
    if (d == -3)
        return {UnitIdeal::two, UnitIdeal::unit_ideal, UnitIdeal::ram3,
                UnitIdeal::unit_ideal, UnitIdeal::ram3};  // -1, z6, z3, -z3, -z6
    return {UnitIdeal::two};                              // -1
}

// Number of roots of unity u with v_P(u - 1) >= v_P(conductor) for all P.
inline long omega_conductor(const std::vector<PrimePart>& parts, long d) {
    long count = 1;  // u = 1
    for (UnitIdeal ui : unit_minus_one_ideals(d)) {
        bool ok = true;
        for (const auto& part : parts) {
            auto val_at = [&](long needed, long have) { return have >= needed; };
            long v1 = 0, v2 = 0;
            switch (ui) {
                case UnitIdeal::two:
                    if (part.p == 2) v1 = v2 = (part.splitting == 0) ? 2 : 1;
                    break;
                case UnitIdeal::ram2:
                    if (part.p == 2 && part.splitting == 0) v1 = v2 = 1;
                    break;
                case UnitIdeal::ram3:
                    if (part.p == 3 && part.splitting == 0) v1 = v2 = 1;
                    break;
                case UnitIdeal::unit_ideal:
                    break;
            }
            if (!val_at(part.e1, v1) || (part.splitting == 1 && !val_at(part.e2, v2))) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

// Direct check of u = 1 mod (n) in the Z[theta] basis, for the principal case.
inline long omega_principal_direct(long n, long d) {
    // Units as (x, y) with u = x + y*theta.
    std::vector<std::pair<long, long>> units = {{1, 0}, {-1, 0}};
    if (d == -4) {
        units.push_back({0, 1});    // i = theta
        units.push_back({0, -1});   // -i
    } else if (d == -3) {
        units.push_back({-1, 1});   // z6 = theta - 1
        units.push_back({1, -1});   // -z6
        units.push_back({-2, 1});   // z3 = theta - 2
        units.push_back({2, -1});   // -z3
    }
    long count = 0;
    for (auto [x, y] : units)
        if (mod_pos(x - 1, n) == 0 && mod_pos(y, n) == 0) ++count;
    return count;
}

inline Integer degree_from_parts(const std::vector<PrimePart>& parts, const FieldData& F) {
    Rational deg = Rational(F.h) * Rational(phi_conductor(parts)) *
                   frac(Integer(omega_conductor(parts, F.d)), Integer(F.omega_K));
    deg.canonicalize();
    if (deg.get_den() != 1) throw domain_error("ray class degree: non-integral result");
    return deg.get_num();
}

}  // namespace detail

// [K_(n) : K] = h phi((n)) omega((n)) / omega_K.
inline Integer ray_class_degree(long n, const FieldData& F) {
    if (n < 1) throw domain_error("ray_class_degree requires n >= 1");
    if (n == 1) return F.h;
    return detail::degree_from_parts(detail::factor_conductor(n, F.d), F);
}

// Hypothesis of the generation criterion for f = (n):
// [K_f : K] > 2 sum over prime ideals P | f of [K_{f P^{-v_P(f)}} : K].
// A fast sufficient inequality is tried first; on failure the exact degrees
// are compared.
inline bool schertz_condition(long n, const FieldData& F) {
    if (n < 2) throw domain_error("schertz_condition requires n >= 2");
    auto parts = detail::factor_conductor(n, F.d);

    // Sufficient pre-check: 4 sum_split 1/((p-1)p^{u-1}) + 2 sum_inert
    // 1/((p^2-1)p^{2(v-1)}) + 2 sum_ram 1/((r-1)r^{2w-1}) < omega((n))/omega_K.
    {
        Rational lhs(0);
        for (const auto& part : parts) {
            long e = (part.splitting == 0) ? part.e1 / 2 : part.e1;  // exponent of p in n
            Integer p(part.p);
            if (part.splitting == 1) {
                Integer den = (p - 1);
                for (long i = 1; i < e; ++i) den *= p;
                lhs += Rational(4) / Rational(den);
            } else if (part.splitting == -1) {
                Integer den = p * p - 1;
                for (long i = 1; i < e; ++i) den *= p * p;
                lhs += Rational(2) / Rational(den);
            } else {
                Integer den = (p - 1);
                for (long i = 1; i < 2 * e; ++i) den *= p;
                lhs += Rational(2) / Rational(den);
            }
        }
        Rational rhs(detail::omega_conductor(parts, F.d), F.omega_K);
        if (lhs < rhs) return true;
    }

    Integer full = detail::degree_from_parts(parts, F);
    Integer sum = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        auto drop_first = parts;
        drop_first[i].e1 = 0;
        sum += detail::degree_from_parts(drop_first, F);
        if (parts[i].splitting == 1) {
            auto drop_second = parts;
            drop_second[i].e2 = 0;
            sum += detail::degree_from_parts(drop_second, F);
        }
    }
    return full > 2 * sum;
}

// Upper bound of the counting argument for fields where g_(N)(C_0) might fail
// to generate K_(N) over H_K: 12 for N = 2, else
// ((N+1) floor(N/2) - 1) (N^5/4) prod (1-p^-1)(1-p^-2).
inline Integer generation_failure_bound(long n) {
    if (n < 2) throw domain_error("generation_failure_bound requires n >= 2");
    if (n == 2) return 12;
    Rational r = Rational((Integer(n) + 1) * (n / 2) - 1) *
                 frac(Integer(n) * n * n * n * n, Integer(4));
    long rest = n;
    for (long p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        r *= frac(p - 1, p) * frac(Integer(p) * p - 1, Integer(p) * p);
        while (rest % p == 0) rest /= p;
    }
    r.canonicalize();
    if (r.get_den() != 1) throw domain_error("generation_failure_bound: non-integral result");
    return r.get_num();
}

// Smallest power of g_{(r1,r2)} on which the GL2 index action is well defined.
inline long minimal_class_power(long n) {
    return 12 * n / std::gcd(6L, n);
}

// g_(n)(C_0) = g_{(0,1/n)}(theta_K)^{12n}.
inline ComplexBall sr_invariant_principal(long n, const FieldData& F, mpfr_prec_t prec) {
    if (n < 2) throw domain_error("sr_invariant_principal requires n >= 2");
    ComplexBall g = eval_siegel(SiegelIndex(0, 1, n), theta_K(F.d), prec);
    return g.pow_int(12 * n);
}

// One value g_{(0,1/n) alpha}(theta_K)^power per element of Gal(K_(n)/H_K),
// computed by acting on the index only.  power must be a multiple of
// 12n/gcd(6,n) for the values to be class functions of the cosets.
inline std::vector<ComplexBall> conjugates_over_HK(long n, const FieldData& F, long power,
                                                   mpfr_prec_t prec) {
    if (power % minimal_class_power(n) != 0)
        throw domain_error("conjugates_over_HK: power below the class-function threshold");
    SiegelIndex base(0, 1, n);
    std::vector<ComplexBall> out;
    for (const GL2ModN& alpha : gal_over_HK(n, F)) {
        SiegelIndex idx = gl2_action(base, alpha);
        out.push_back(eval_siegel(idx, theta_K(F.d), prec).pow_int(power));
    }
    return out;
}

// N_{K_(2)/H_K}(g_{(0,1/2)}(theta_K)^{12}).
inline ComplexBall norm_over_HK(long n, const FieldData& F, mpfr_prec_t prec) {
    if (n != 2) throw domain_error("norm_over_HK implemented for n = 2 only");
    std::vector<ComplexBall> conj = conjugates_over_HK(2, F, 12, prec);
    ComplexBall acc = ComplexBall::from_int(1, prec);
    for (const ComplexBall& c : conj) acc = acc * c;
    return acc;
}

// Gal(H_K/K)-conjugates of the level-2 class invariant: for each reduced form
// Q, every level-2 orbit index is pushed through u_Q and evaluated at theta_Q.
// With h = g^{12} this conjugates the single value (d = 1 mod 8 case); with
// the full orbit product it conjugates the norm (d = 0 mod 4 case).
inline std::vector<ComplexBall> hilbert_conjugates(long n, const FieldData& F,
                                                   mpfr_prec_t prec) {
    if (n != 2) throw domain_error("hilbert_conjugates implemented for n = 2 only");
    SiegelIndex base(0, 1, 2);
    std::vector<SiegelIndex> orbit;
    for (const GL2ModN& alpha : gal_over_HK(2, F)) orbit.push_back(gl2_action(base, alpha));
    std::vector<ComplexBall> out;
    for (const BQF& q : reduced_forms(F.d)) {
        GL2ModN u = u_Q(q, 2, F);
        QuadSurd tq = theta_Q(q);
        ComplexBall acc = ComplexBall::from_int(1, prec);
        for (const SiegelIndex& idx : orbit)
            acc = acc * eval_siegel(gl2_action(idx, u), tq, prec).pow_int(12);
        out.push_back(acc);
    }
    return out;
}

// Monic integer polynomial recognized from a conjugation-closed list of
// enclosures, with the residual certificate max |P(c_i)|.
struct RecognizedPoly {
    std::vector<Integer> coeffs;  // coeffs[i] multiplies X^i; leading 1 included
    std::vector<ComplexBall> conjugates;
    RealBall residual;
    long precision_used;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const Integer& constant_term() const { return coeffs.front(); }
};

inline RecognizedPoly recognize_integer_poly(const std::vector<ComplexBall>& conjugates) {
    if (conjugates.empty()) throw domain_error("recognize_integer_poly: empty conjugate list");
    mpfr_prec_t prec = 64;
    for (const ComplexBall& c : conjugates) prec = std::max(prec, c.prec());

    // Conjugation closure: every enclosure must overlap some enclosure's mirror.
    for (const ComplexBall& c : conjugates) {
        bool paired = false;
        for (const ComplexBall& o : conjugates)
            if (c.overlaps(o.conj())) {
                paired = true;
                break;
            }
        if (!paired)
            throw domain_error("recognize_integer_poly: list not closed under conjugation");
    }

    // Expand prod (X - c_i).
    std::vector<ComplexBall> poly = {ComplexBall::from_int(1, prec)};
    for (const ComplexBall& c : conjugates) {
        std::vector<ComplexBall> next(poly.size() + 1, ComplexBall(prec));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - poly[i] * c;
        }
        poly = std::move(next);
    }
    // poly[k] multiplies X^k, poly.back() == 1.

    RecognizedPoly out;
    out.conjugates = conjugates;
    out.precision_used = static_cast<long>(prec);
    out.coeffs.resize(poly.size());
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        const ComplexBall& cb = poly[i];
        if (!cb.im().contains_zero())
            throw no_integer_error("coefficient enclosure has nonzero imaginary part");
        Integer z;
        int cnt = cb.re().integers_contained(z);
        if (cnt == 0) throw no_integer_error("coefficient enclosure excludes all integers");
        if (cnt > 1) throw ambiguous_rounding_error("coefficient enclosure spans >= 2 integers");
        Integer z4;
        if (cb.re().integers_contained(z4, 4.0) != 1)
            throw ambiguous_rounding_error("coefficient enclosure lacks 4x margin");
        out.coeffs[i] = z;
    }
    out.coeffs.back() = 1;

    // Residual: max |P(c_i)| over the recognized integer polynomial.
    mpfr_t max_up, up, zero;
    mpfr_inits2(prec, max_up, up, (mpfr_ptr) nullptr);
    mpfr_init2(zero, 8);
    mpfr_set_zero(max_up, 1);
    mpfr_set_zero(zero, 1);
    for (const ComplexBall& c : conjugates) {
        ComplexBall acc = ComplexBall::from_int(1, prec);
        for (size_t i = poly.size() - 1; i-- > 0;)
            acc = acc * c + ComplexBall::from_real(RealBall::from_integer(out.coeffs[i], prec));
        RealBall a = acc.abs();
        mpfr_add(up, a.mid(), a.rad(), MPFR_RNDU);
        if (mpfr_cmp(up, max_up) > 0) mpfr_set(max_up, up, MPFR_RNDU);
    }
    out.residual = RealBall::from_endpoints(zero, max_up, prec);
    mpfr_clears(max_up, up, zero, (mpfr_ptr) nullptr);

    mpfr_t thr;
    mpfr_init2(thr, 32);
    mpfr_set_ui_2exp(thr, 1, -(out.precision_used / 4), MPFR_RNDD);
    bool ok = mpfr_cmp(out.residual.mid(), thr) < 0;
    mpfr_clear(thr);
    if (!ok) throw precision_error("recognized polynomial residual too large");
    return out;
}

// Retry ladder for recognition: conjugates are recomputed at doubling
// precision until rounding is unambiguous.  Starts at 128 bits, gives up
// beyond max_prec.
inline RecognizedPoly recognize_with_retry(
    const std::function<std::vector<ComplexBall>(mpfr_prec_t)>& conjugates_at,
    mpfr_prec_t start_prec = 128, mpfr_prec_t max_prec = 8192) {
    for (mpfr_prec_t p = start_prec;; p *= 2) {
        try {
            return recognize_integer_poly(conjugates_at(p));
        } catch (const ambiguous_rounding_error&) {
            if (2 * p > max_prec) throw;
        } catch (const precision_error&) {
            if (2 * p > max_prec) throw;
        }
    }
}

// x | 2^12 in the ring of algebraic integers, read off the recognized minimal
// polynomial: X^deg P(2^12/X) / a_0 is the characteristic polynomial of
// y = 2^12/x, so y is integral iff a_0 divides a_j 2^{12 j} for every j.
inline bool divides_two_pow_twelve(const RecognizedPoly& p) {
    const Integer& a0 = p.constant_term();
    if (a0 == 0) return false;
    Integer base = Integer(1) << 12;
    Integer pw = 1;
    for (long j = 0; j <= p.degree(); ++j) {
        if (mod_pos(p.coeffs[j] * pw, abs(a0)) != 0) return false;
        pw *= base;
    }
    return true;
}

// Conjugate set of x = zeta_8 g_{(0,1/2)}(theta_K) for 2 inert, 3 unramified
// (d = 5 mod 8, d != 0 mod 3): {x, zeta_8^{k1} g_{(1/2,0)}, zeta_8^{k2}
// g_{(1/2,1/2)}} where the odd eighth-root corrections are pinned numerically
// by conjugation-closure and near-integral symmetric functions; the recognizer
// afterwards certifies integrality rigorously.
inline std::vector<ComplexBall> inert_cubic_conjugates(const FieldData& F, mpfr_prec_t prec) {
    if (mod_pos(F.d, 8L) != 5 || mod_pos(F.d, 3L) == 0)
        throw domain_error("inert_cubic_conjugates requires d = 5 mod 8, d != 0 mod 3");
    QuadSurd theta = theta_K(F.d);
    ComplexBall x1 = root_of_unity(8, 1, prec) * eval_siegel(SiegelIndex(0, 1, 2), theta, prec);
    ComplexBall g1 = eval_siegel(SiegelIndex(1, 0, 2), theta, prec);
    ComplexBall g2 = eval_siegel(SiegelIndex(1, 1, 2), theta, prec);
    if (!x1.is_real_enclosure())
        throw precision_error("zeta_8 g_{(0,1/2)}(theta) not certified real");

    auto encloses_integer = [](const ComplexBall& z) {
        Integer tmp;
        return z.im().contains_zero() && z.re().integers_contained(tmp) == 1;
    };

    std::vector<ComplexBall> found;
    for (long k1 = 1; k1 < 8 && found.empty(); k1 += 2) {
        for (long k2 = 1; k2 < 8; k2 += 2) {
            ComplexBall x2 = root_of_unity(8, k1, prec) * g1;
            ComplexBall x3 = root_of_unity(8, k2, prec) * g2;
            if (!x2.overlaps(x3.conj())) continue;
            ComplexBall e1 = x1 + x2 + x3;
            ComplexBall e2 = x1 * x2 + x1 * x3 + x2 * x3;
            ComplexBall e3 = x1 * x2 * x3;
            if (!encloses_integer(e1) || !encloses_integer(e2) || !encloses_integer(e3))
                continue;
            found = {x1, x2, x3};
            break;
        }
    }
    if (found.empty())
        throw precision_error("no conjugation-closed eighth-root correction found");
    return found;
}

enum class SingularCase { d0mod4, d1mod8 };

// j(theta_K) from x = N_{K_(2)/H_K}(g^{12}): (256-x)^3/x^2 or (x+16)^3/x.
inline ComplexBall singular_j_from_x(const ComplexBall& x, SingularCase c) {
    if (!x.norm2().is_positive()) throw precision_error("singular_j_from_x: x ball contains 0");
    mpfr_prec_t p = x.prec();
    if (c == SingularCase::d0mod4) {
        ComplexBall num = (ComplexBall::from_int(256, p) - x).pow_int(3);
        return num / x.pow_int(2);
    }
    ComplexBall num = (x + ComplexBall::from_int(16, p)).pow_int(3);
    return num / x;
}

inline SingularCase singular_case_of(long d) {
    if (mod_pos(d, 4L) == 0) return SingularCase::d0mod4;
    if (mod_pos(d, 8L) == 1) return SingularCase::d1mod8;
    throw domain_error("no singular-value case for d = 5 mod 8");
}

}  // namespace cmf

#pragma once

#include <string>

#include "cmf/ball.hpp"
#include "cmf/error.hpp"
#include "cmf/rational.hpp"

namespace cmf {

// Exact element (p + q sqrt(d))/r of an imaginary quadratic field, d < 0,
// normalized to gcd(p, q, r) = 1, r > 0, and q > 0 (upper half-plane).
struct QuadSurd {
    Integer p, q, r, d;

    QuadSurd(Integer p_, Integer q_, Integer r_, Integer d_)
        : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)), d(std::move(d_)) {
        if (d >= 0) throw domain_error("QuadSurd radicand must be negative");
        if (r == 0) throw domain_error("QuadSurd denominator must be nonzero");
        if (r < 0) {
            p = -p;
            q = -q;
            r = -r;
        }
        if (q <= 0) throw domain_error("QuadSurd must lie in the upper half-plane");
        Integer g = gcd(gcd(p, q), r);
        if (g > 1) {
            p /= g;
            q /= g;
            r /= g;
        }
    }

    bool operator==(const QuadSurd& o) const {
        return p == o.p && q == o.q && r == o.r && d == o.d;
    }

    Rational real_part() const { return frac(p, r); }

    // u*tau + v for rationals u > 0, v.
    QuadSurd linear_map(const Rational& u, const Rational& v) const {
        if (u <= 0) throw domain_error("linear_map requires a positive scale");
        Integer den = r * u.get_den() * v.get_den();
        Integer np = u.get_num() * v.get_den() * p + v.get_num() * u.get_den() * r;
        Integer nq = u.get_num() * v.get_den() * q;
        return QuadSurd(np, nq, den, d);
    }

    // (a tau + b)/(c tau + d') for an integer matrix of determinant 1.
    QuadSurd moebius(long a, long b, long c, long dd) const {
        Integer det = Integer(a) * dd - Integer(b) * c;
        if (det != 1) throw domain_error("moebius requires determinant 1");
        Integer t1 = a * p + b * r;   // numerator rational part (over r)
        Integer t2 = c * p + dd * r;  // denominator rational part (over r)
        Integer np = t1 * t2 - Integer(a) * c * q * q * d;
        Integer nq = q * r;  // times det = 1
        Integer nr = t2 * t2 - Integer(c) * c * q * q * d;
        return QuadSurd(np, nq, nr, d);
    }

    ComplexBall to_ball(mpfr_prec_t prec) const {
        RealBall re = RealBall::from_rational(frac(p, r), prec);
        RealBall im = RealBall::sqrt_integer(-d, prec).mul_rational(frac(q, r));
        return ComplexBall(re, im);
    }

    std::string str() const {
        return "(" + p.get_str() + " + " + q.get_str() + "*sqrt(" + d.get_str() + "))/" +
               r.get_str();
    }
};

// e^{2 pi i (s tau + t)} for exact rationals s, t: the root-of-unity part of
// the exponent is split off exactly, so purely imaginary contributions keep
// exact phases (e.g. q(theta) is exactly real at CM points with 2 Re in Z).
inline ComplexBall cm_qpow(const QuadSurd& tau, const Rational& s, const Rational& t,
                           mpfr_prec_t prec) {
    Rational phase = frac_mod1(s * frac(tau.p, tau.r) + t);
    ComplexBall u = unit_phase(phase, prec);
    Rational m = s * frac(tau.q, tau.r);  // modulus is e^{-2 pi m sqrt(|d|)}
    if (m == 0) return u;
    RealBall root = RealBall::sqrt_integer(-tau.d, prec);
    RealBall expo = RealBall::pi(prec).mul_2exp(1) * root;
    RealBall modulus = (-expo.mul_rational(m)).exp();
    return u * modulus;
}

// q = e^{2 pi i tau} with exact sign information at CM points.
inline ComplexBall exp_2pi_i(const QuadSurd& tau, mpfr_prec_t prec) {
    return cm_qpow(tau, Rational(1), Rational(0), prec);
}

}  // namespace cmf

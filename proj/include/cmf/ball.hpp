#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "cmf/error.hpp"
#include "cmf/rational.hpp"

namespace cmf {

// Midpoint-radius enclosure of a real number.  Every operation returns a ball
// containing the exact image of all points of the operand balls; rounding of
// the midpoint is absorbed into the radius.  The midpoint carries the working
// precision; binary operations compute at the larger operand precision, so a
// precision chosen at the leaves threads through a whole expression without
// any ambient state.
class RealBall {
public:
    static constexpr mpfr_prec_t kRadiusPrec = 32;

    RealBall() : RealBall(64) {}

    explicit RealBall(mpfr_prec_t prec) {
        mpfr_init2(mid_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
        mpfr_set_zero(mid_, 1);
        mpfr_init2(rad_, kRadiusPrec);
        mpfr_set_zero(rad_, 1);
    }

    RealBall(const RealBall& o) {
        mpfr_init2(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_init2(rad_, kRadiusPrec);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }

    RealBall(RealBall&& o) noexcept {
        mpfr_init2(mid_, MPFR_PREC_MIN);
        mpfr_init2(rad_, kRadiusPrec);
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }

    RealBall& operator=(const RealBall& o) {
        if (this != &o) {
            mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
            mpfr_set(mid_, o.mid_, MPFR_RNDN);
            mpfr_set(rad_, o.rad_, MPFR_RNDU);
        }
        return *this;
    }

    RealBall& operator=(RealBall&& o) noexcept {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
        return *this;
    }

    ~RealBall() {
        mpfr_clear(mid_);
        mpfr_clear(rad_);
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }

    // ---- constructors of exact / near-exact values ----

    static RealBall from_int(long v, mpfr_prec_t prec) {
        RealBall r(prec);
        int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
        r.bump_ulp(t);
        return r;
    }

    static RealBall from_integer(const Integer& v, mpfr_prec_t prec) {
        RealBall r(prec);
        int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
        r.bump_ulp(t);
        return r;
    }

    static RealBall from_rational(const Rational& v, mpfr_prec_t prec) {
        RealBall r(prec);
        int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
        r.bump_ulp(t);
        return r;
    }

    // Ball [lo, hi]; endpoints given as mpfr values.
    static RealBall from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
        RealBall r(prec);
        mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(r.mid_, r.mid_, 1, MPFR_RNDN);
        mpfr_t d;
        mpfr_init2(d, kRadiusPrec);
        mpfr_sub(d, hi, r.mid_, MPFR_RNDU);
        mpfr_t d2;
        mpfr_init2(d2, kRadiusPrec);
        mpfr_sub(d2, r.mid_, lo, MPFR_RNDU);
        mpfr_max(r.rad_, d, d2, MPFR_RNDU);
        mpfr_clear(d);
        mpfr_clear(d2);
        r.bump_ulp(1);
        return r;
    }

    static RealBall pi(mpfr_prec_t prec) {
        RealBall r(prec);
        int t = mpfr_const_pi(r.mid_, MPFR_RNDN);
        r.bump_ulp(t);
        return r;
    }

    RealBall with_radius_upper(const mpfr_t extra) const {
        RealBall r(*this);
        mpfr_add(r.rad_, r.rad_, extra, MPFR_RNDU);
        return r;
    }

    // ---- arithmetic ----

    friend RealBall operator-(const RealBall& a) {
        RealBall r(a);
        mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);  // exact
        return r;
    }

    friend RealBall operator+(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        r.bump_ulp(t);
        return r;
    }

    friend RealBall operator-(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
        r.bump_ulp(t);
        return r;
    }

    friend RealBall operator*(const RealBall& a, const RealBall& b) {
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_t am, bm, u;
        mpfr_inits2(kRadiusPrec, am, bm, u, (mpfr_ptr) nullptr);
        mag_upper(am, a.mid_);
        mag_upper(bm, b.mid_);
        mpfr_mul(u, am, b.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, u, MPFR_RNDU);
        mpfr_mul(u, bm, a.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, u, MPFR_RNDU);
        mpfr_mul(u, a.rad_, b.rad_, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, u, MPFR_RNDU);
        mpfr_clears(am, bm, u, (mpfr_ptr) nullptr);
        r.bump_ulp(t);
        return r;
    }

    // |a/b - am/bm| <= (rad_a |bm| + |am| rad_b) / (|bm| (|bm| - rad_b)).
    friend RealBall operator/(const RealBall& a, const RealBall& b) {
        if (!b.is_nonzero()) throw precision_error("division by a ball containing zero");
        RealBall r(std::max(a.prec(), b.prec()));
        int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
        mpfr_t am, bm_up, bm_lo, num, den, u;
        mpfr_inits2(kRadiusPrec, am, bm_up, bm_lo, num, den, u, (mpfr_ptr) nullptr);
        mag_upper(am, a.mid_);
        mag_upper(bm_up, b.mid_);
        mag_lower(bm_lo, b.mid_);
        mpfr_mul(num, a.rad_, bm_up, MPFR_RNDU);
        mpfr_mul(u, am, b.rad_, MPFR_RNDU);
        mpfr_add(num, num, u, MPFR_RNDU);
        mpfr_sub(den, bm_lo, b.rad_, MPFR_RNDD);
        if (!(mpfr_sgn(den) > 0)) {
            mpfr_clears(am, bm_up, bm_lo, num, den, u, (mpfr_ptr) nullptr);
            throw precision_error("division by a ball containing zero");
        }
        mpfr_mul(den, den, bm_lo, MPFR_RNDD);
        mpfr_div(u, num, den, MPFR_RNDU);
        mpfr_add(r.rad_, r.rad_, u, MPFR_RNDU);
        mpfr_clears(am, bm_up, bm_lo, num, den, u, (mpfr_ptr) nullptr);
        r.bump_ulp(t);
        return r;
    }

    RealBall mul_rational(const Rational& q) const {
        RealBall r(prec());
        int t = mpfr_mul_q(r.mid_, mid_, q.get_mpq_t(), MPFR_RNDN);
        mpfr_t qa;
        mpfr_init2(qa, kRadiusPrec);
        mpfr_set_q(qa, q.get_mpq_t(), MPFR_RNDA);
        mpfr_abs(qa, qa, MPFR_RNDU);
        mpfr_mul(r.rad_, rad_, qa, MPFR_RNDU);
        mpfr_clear(qa);
        r.bump_ulp(t);
        return r;
    }

    RealBall mul_2exp(long e) const {
        RealBall r(*this);
        mpfr_mul_2si(r.mid_, r.mid_, e, MPFR_RNDN);
        mpfr_mul_2si(r.rad_, r.rad_, e, MPFR_RNDU);
        return r;
    }

    RealBall abs() const {
        RealBall r(*this);
        mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);  // exact
        return r;
    }

    RealBall pow_int(long k) const;

    // e^x.  Propagated radius uses |e^x - e^xm| <= e^xm * rad * e^rad.
    RealBall exp() const {
        RealBall r(prec());
        int t = mpfr_exp(r.mid_, mid_, MPFR_RNDN);
        mpfr_t am, f, u;
        mpfr_inits2(kRadiusPrec, am, f, u, (mpfr_ptr) nullptr);
        mag_upper(am, r.mid_);
        mpfr_nextabove(am);
        mpfr_nextabove(am);
        if (mpfr_cmp_ui(rad_, 1) <= 0) {
            // e^rad <= 1 + 2 rad on [0,1]
            mpfr_mul_2ui(f, rad_, 1, MPFR_RNDU);
            mpfr_add_ui(f, f, 1, MPFR_RNDU);
        } else {
            mpfr_exp(f, rad_, MPFR_RNDU);
        }
        mpfr_mul(u, am, rad_, MPFR_RNDU);
        mpfr_mul(u, u, f, MPFR_RNDU);
        mpfr_set(r.rad_, u, MPFR_RNDU);
        mpfr_clears(am, f, u, (mpfr_ptr) nullptr);
        r.bump_ulp(t);
        return r;
    }

    // log x, requires the ball certifiably positive.
    RealBall log() const {
        if (!is_positive()) throw precision_error("log of a ball not certified positive");
        RealBall r(prec());
        int t = mpfr_log(r.mid_, mid_, MPFR_RNDN);
        mpfr_t lo, u;
        mpfr_inits2(kRadiusPrec, lo, u, (mpfr_ptr) nullptr);
        mag_lower(lo, mid_);
        mpfr_sub(lo, lo, rad_, MPFR_RNDD);
        mpfr_div(u, rad_, lo, MPFR_RNDU);
        mpfr_set(r.rad_, u, MPFR_RNDU);
        mpfr_clears(lo, u, (mpfr_ptr) nullptr);
        r.bump_ulp(t);
        return r;
    }

    // sqrt over the clamped interval [max(0, m-r), m+r]; the true value is
    // assumed nonnegative (callers only take square roots of nonnegative
    // quantities; a ball dipping below zero by its radius is clamped).
    RealBall sqrt() const {
        mpfr_prec_t p = prec();
        mpfr_t lo, hi, slo, shi;
        mpfr_inits2(p + 8, lo, hi, slo, shi, (mpfr_ptr) nullptr);
        mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
        if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
        mpfr_add(hi, mid_, rad_, MPFR_RNDU);
        if (mpfr_sgn(hi) < 0) {
            mpfr_clears(lo, hi, slo, shi, (mpfr_ptr) nullptr);
            throw domain_error("sqrt of a certifiably negative ball");
        }
        mpfr_sqrt(slo, lo, MPFR_RNDD);
        mpfr_sqrt(shi, hi, MPFR_RNDU);
        RealBall r = from_endpoints(slo, shi, p);
        mpfr_clears(lo, hi, slo, shi, (mpfr_ptr) nullptr);
        return r;
    }

    static RealBall sqrt_integer(const Integer& v, mpfr_prec_t prec) {
        if (v < 0) throw domain_error("sqrt_integer of a negative integer");
        return from_integer(v, prec + 8).sqrt();
    }

    // sin / cos are 1-Lipschitz, so the operand radius propagates unscaled.
    RealBall sin() const {
        RealBall r(prec());
        int t = mpfr_sin(r.mid_, mid_, MPFR_RNDN);
        mpfr_set(r.rad_, rad_, MPFR_RNDU);
        r.bump_ulp(t);
        return r;
    }

    RealBall cos() const {
        RealBall r(prec());
        int t = mpfr_cos(r.mid_, mid_, MPFR_RNDN);
        mpfr_set(r.rad_, rad_, MPFR_RNDU);
        r.bump_ulp(t);
        return r;
    }

    // x^q = e^{q log x} for a certifiably positive ball (integral q is exactified).
    RealBall pow_rational(const Rational& q) const {
        if (q.get_den() == 1 && mpz_fits_slong_p(q.get_num().get_mpz_t()))
            return pow_int(mpz_get_si(q.get_num().get_mpz_t()));
        return log().mul_rational(q).exp();
    }

    // ---- predicates (all certified; "false" never lies) ----

    bool contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }
    bool is_nonzero() const { return mpfr_cmpabs(mid_, rad_) > 0; }
    bool is_positive() const { return mpfr_sgn(mid_) > 0 && is_nonzero(); }
    bool is_negative() const { return mpfr_sgn(mid_) < 0 && is_nonzero(); }

    // True only if [m-r, m+r] certainly contains q.
    bool contains_rational(const Rational& q) const {
        mpfr_t lo, hi;
        mpfr_inits2(prec() + 64, lo, hi, (mpfr_ptr) nullptr);
        mpfr_sub_q(lo, mid_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_sub_q(hi, mid_, q.get_mpq_t(), MPFR_RNDU);
        mpfr_neg(lo, lo, MPFR_RNDU);
        bool ok = mpfr_cmp(hi, rad_) <= 0 && mpfr_cmp(lo, rad_) <= 0;
        mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
        return ok;
    }

    bool contains_integer_value(const Integer& z) const { return contains_rational(Rational(z)); }

    // Number of integers in the enclosure; sets out when exactly one.
    // Returns 0, 1, or 2 (meaning "two or more").
    int integers_contained(Integer& out, double inflate = 1.0) const {
        mpfr_t lo, hi, r;
        mpfr_inits2(prec() + 64, lo, hi, r, (mpfr_ptr) nullptr);
        mpfr_set(r, rad_, MPFR_RNDU);
        if (inflate != 1.0) mpfr_mul_d(r, r, inflate, MPFR_RNDU);
        mpfr_sub(lo, mid_, r, MPFR_RNDD);
        mpfr_add(hi, mid_, r, MPFR_RNDU);
        Integer zlo, zhi;
        mpfr_get_z(zlo.get_mpz_t(), lo, MPFR_RNDU);  // ceil(lo)
        mpfr_get_z(zhi.get_mpz_t(), hi, MPFR_RNDD);  // floor(hi)
        mpfr_clears(lo, hi, r, (mpfr_ptr) nullptr);
        if (zlo > zhi) return 0;
        if (zlo == zhi) {
            out = zlo;
            return 1;
        }
        return 2;
    }

    // Certified m + r < 1.
    bool certainly_less_one() const {
        mpfr_t t;
        mpfr_init2(t, prec() + 8);
        mpfr_add(t, mid_, rad_, MPFR_RNDU);
        bool ok = mpfr_cmp_ui(t, 1) < 0;
        mpfr_clear(t);
        return ok;
    }

    bool contains_ball(const RealBall& other) const {
        // |m1 - m2| + r2 <= r1
        mpfr_t d;
        mpfr_init2(d, std::max(prec(), other.prec()) + 8);
        mpfr_sub(d, mid_, other.mid_, MPFR_RNDA);
        mpfr_abs(d, d, MPFR_RNDU);
        mpfr_add(d, d, other.rad_, MPFR_RNDU);
        bool ok = mpfr_cmp(d, rad_) <= 0;
        mpfr_clear(d);
        return ok;
    }

    bool overlaps(const RealBall& other) const { return (*this - other).contains_zero(); }

    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // log2 of the radius (huge negative for a zero radius).
    long rad_log2() const {
        if (mpfr_zero_p(rad_)) return -(1L << 40);
        return static_cast<long>(mpfr_get_exp(rad_));
    }

    std::string str(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), mid_);
        std::string midstr(s);
        mpfr_free_str(s);
        mpfr_asprintf(&s, "%.3Rg", rad_);
        std::string radstr(s);
        mpfr_free_str(s);
        return midstr + " +/- " + radstr;
    }

    std::string mid_str(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), mid_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    std::string rad_str() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.3Rg", rad_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    // Widen radius by one ulp of the midpoint when a rounding was inexact.
    void bump_ulp(int ternary) {
        if (ternary == 0 || mpfr_zero_p(mid_) || !mpfr_number_p(mid_)) {
            if (!mpfr_number_p(mid_)) throw precision_error("non-finite midpoint");
            return;
        }
        mpfr_t u;
        mpfr_init2(u, 8);
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_), MPFR_RNDU);
        mpfr_add(rad_, rad_, u, MPFR_RNDU);
        mpfr_clear(u);
    }

    static void mag_upper(mpfr_t out, const mpfr_t x) {
        mpfr_set(out, x, MPFR_RNDA);
        mpfr_abs(out, out, MPFR_RNDU);
    }

    static void mag_lower(mpfr_t out, const mpfr_t x) {
        mpfr_set(out, x, MPFR_RNDZ);
        mpfr_abs(out, out, MPFR_RNDZ);
    }

    mpfr_t mid_;
    mpfr_t rad_;
};

inline RealBall RealBall::pow_int(long k) const {
    if (k < 0) return RealBall::from_int(1, prec()) / pow_int(-k);
    RealBall acc = RealBall::from_int(1, prec());
    RealBall base(*this);
    unsigned long e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

// Componentwise complex enclosure.
class ComplexBall {
public:
    ComplexBall() = default;
    explicit ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexBall from_real(RealBall re) {
        mpfr_prec_t p = re.prec();
        return ComplexBall(std::move(re), RealBall(p));
    }

    static ComplexBall from_int(long v, mpfr_prec_t prec) {
        return ComplexBall(RealBall::from_int(v, prec), RealBall(prec));
    }

    const RealBall& re() const { return re_; }
    const RealBall& im() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend ComplexBall operator-(const ComplexBall& a) { return {-a.re_, -a.im_}; }

    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }

    friend ComplexBall operator*(const ComplexBall& a, const RealBall& s) {
        return {a.re_ * s, a.im_ * s};
    }

    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        RealBall n = b.norm2();
        if (!n.is_positive()) throw precision_error("complex division by a ball containing zero");
        ComplexBall num = a * b.conj();
        return {num.re_ / n, num.im_ / n};
    }

    ComplexBall conj() const { return {re_, -im_}; }

    RealBall norm2() const { return re_ * re_ + im_ * im_; }
    RealBall abs() const { return norm2().sqrt(); }

    ComplexBall pow_int(long k) const {
        if (k < 0) return ComplexBall::from_int(1, prec()) / pow_int(-k);
        ComplexBall acc = ComplexBall::from_int(1, prec());
        ComplexBall base(*this);
        unsigned long e = static_cast<unsigned long>(k);
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    ComplexBall mul_rational(const Rational& q) const {
        return {re_.mul_rational(q), im_.mul_rational(q)};
    }

    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool is_nonzero() const { return re_.is_nonzero() || im_.is_nonzero(); }
    bool overlaps(const ComplexBall& o) const { return (*this - o).contains_zero(); }
    bool is_real_enclosure() const { return im_.contains_zero(); }

    bool contains_integer_value(const Integer& z) const {
        return im_.contains_zero() && re_.contains_integer_value(z);
    }

    std::string str(size_t digits = 20) const {
        return "(" + re_.str(digits) + ") + (" + im_.str(digits) + ")*I";
    }

private:
    RealBall re_;
    RealBall im_;
};

// e^{2 pi i t} for an exact rational t.  Exact (zero radius) when the reduced
// denominator divides 4.
inline ComplexBall unit_phase(const Rational& t_in, mpfr_prec_t prec) {
    Rational t = frac_mod1(t_in);
    const Integer& num = t.get_num();
    const Integer& den = t.get_den();
    if (den == 1) return ComplexBall::from_int(1, prec);
    if (den == 2) return ComplexBall::from_int(-1, prec);
    if (den == 4) {
        RealBall zero(prec);
        RealBall one = RealBall::from_int(num == 1 ? 1 : -1, prec);
        return ComplexBall(zero, one);  // num/4 with num in {1,3}
    }
    RealBall theta = RealBall::pi(prec).mul_rational(2 * t);
    return ComplexBall(theta.cos(), theta.sin());
}

// e^{2 pi i k / n}.
inline ComplexBall root_of_unity(long n, long k, mpfr_prec_t prec) {
    if (n < 1) throw domain_error("root_of_unity requires n >= 1");
    return unit_phase(frac(k, n), prec);
}

// q = e^{2 pi i tau} for a ball tau with Im(tau) certified positive.
inline ComplexBall exp_2pi_i(const ComplexBall& tau, mpfr_prec_t prec) {
    if (!tau.im().is_positive())
        throw precision_error("exp_2pi_i: ball does not certify Im(tau) > 0");
    RealBall two_pi = RealBall::pi(prec).mul_2exp(1);
    RealBall modulus = (-(two_pi * tau.im())).exp();
    RealBall angle = two_pi * tau.re();
    return ComplexBall(angle.cos() * modulus, angle.sin() * modulus);
}

}  // namespace cmf

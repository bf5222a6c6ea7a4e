#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cmf/ball.hpp"
#include "cmf/quadsurd.hpp"

using namespace cmf;

TEST_CASE("ball arithmetic basics") {
    RealBall a = RealBall::from_rational(frac(1, 3), 128);
    RealBall b = RealBall::from_rational(frac(1, 7), 128);
    RealBall s = a + b;
    CHECK(s.contains_rational(frac(10, 21)));
    RealBall p = a * b;
    CHECK(p.contains_rational(frac(1, 21)));
    RealBall q = a / b;
    CHECK(q.contains_rational(frac(7, 3)));
    CHECK(q.is_positive());
    CHECK(!q.contains_zero());

    // division by a ball containing zero fails rather than widening
    RealBall z = RealBall::from_rational(Rational(0), 128);
    CHECK_THROWS_AS(a / z, precision_error);
}

TEST_CASE("sqrt and pi enclosures") {
    RealBall r2 = RealBall::sqrt_integer(Integer(2), 256);
    RealBall sq = r2 * r2;
    CHECK(sq.contains_rational(Rational(2)));
    CHECK(sq.rad_log2() < -240);

    RealBall pi = RealBall::pi(256);
    // pi in (3.14159265358979, 3.14159265358980)
    CHECK(pi.contains_rational(Rational(0)) == false);
    RealBall diff =
        pi - RealBall::from_rational(frac(Integer("314159265358979"), Integer("100000000000000")), 256);
    CHECK(diff.is_positive());
}

TEST_CASE("to_ball of theta examples") {
    // theta for d = -4 is i
    QuadSurd t4(0, 1, 2, -4);
    ComplexBall b4 = t4.to_ball(128);
    CHECK(b4.re().contains_rational(Rational(0)));
    RealBall im_sq = b4.im() * b4.im();
    CHECK(im_sq.contains_rational(Rational(1)));

    // theta for d = -7: (3 + sqrt(-7))/2, Im ~ 1.3228756...
    QuadSurd t7(3, 1, 2, -7);
    ComplexBall b7 = t7.to_ball(128);
    CHECK(b7.re().contains_rational(frac(3, 2)));
    RealBall imsq7 = b7.im() * b7.im();
    CHECK(imsq7.contains_rational(frac(7, 4)));

    // theta for d = -163: Im ~ 6.3835...
    QuadSurd t163(3, 1, 2, -163);
    RealBall im163 = t163.to_ball(128).im();
    RealBall lo = im163 - RealBall::from_rational(frac(63835, 10000), 128);
    CHECK(lo.is_positive());
    RealBall hi = RealBall::from_rational(frac(63836, 10000), 128) - im163;
    CHECK(hi.is_positive());
}

TEST_CASE("exp_2pi_i at CM points keeps exact signs") {
    // tau = i: q = e^{-2pi} ~ 0.00186744...
    QuadSurd ti(0, 1, 2, -4);
    ComplexBall q = exp_2pi_i(ti, 192);
    CHECK(q.im().contains_rational(Rational(0)));
    CHECK(q.im().rad_log2() < -150);  // exactly real by construction
    RealBall lo = q.re() - RealBall::from_rational(frac(186744, 100000000), 192);
    CHECK(lo.is_positive());
    RealBall hi = RealBall::from_rational(frac(186745, 100000000), 192) - q.re();
    CHECK(hi.is_positive());

    // tau = (3+sqrt(-163))/2: q = -e^{-pi sqrt 163}, exactly real and negative
    QuadSurd t163(3, 1, 2, -163);
    ComplexBall q163 = exp_2pi_i(t163, 192);
    CHECK(q163.re().is_negative());
    CHECK(mpfr_zero_p(q163.im().mid()));
    CHECK(mpfr_zero_p(q163.im().rad()));

    // tau = sqrt(-8)/2: q = e^{-pi sqrt 8} real positive
    QuadSurd t8(0, 1, 2, -8);
    ComplexBall q8 = exp_2pi_i(t8, 192);
    CHECK(q8.re().is_positive());
    CHECK(mpfr_zero_p(q8.im().rad()));

    // |q| < 1 must be certified for the ball overload as well
    ComplexBall qb = exp_2pi_i(ti.to_ball(192), 192);
    CHECK(qb.abs().certainly_less_one());
    CHECK(qb.overlaps(q));
}

TEST_CASE("exp_2pi_i rejects balls touching the real axis") {
    ComplexBall tau(RealBall::from_rational(frac(1, 3), 64), RealBall(64));  // im = 0
    CHECK_THROWS_AS(exp_2pi_i(tau, 64), precision_error);
}

TEST_CASE("root_of_unity exact cases and values") {
    ComplexBall z1 = root_of_unity(1, 0, 64);
    CHECK(mpfr_cmp_ui(z1.re().mid(), 1) == 0);
    CHECK(mpfr_zero_p(z1.re().rad()));

    ComplexBall zm = root_of_unity(4, 3, 64);  // -i, zero radius
    CHECK(mpfr_zero_p(zm.im().rad()));
    CHECK(mpfr_cmp_si(zm.im().mid(), -1) == 0);
    CHECK(mpfr_zero_p(zm.re().mid()));

    // (8,1): (1+i)/sqrt(2)
    ComplexBall z8 = root_of_unity(8, 1, 192);
    RealBall re2 = z8.re() * z8.re();
    CHECK(re2.contains_rational(frac(1, 2)));
    CHECK(z8.im().is_positive());

    // (3,1): (-1 + sqrt(3) i)/2
    ComplexBall z3 = root_of_unity(3, 1, 192);
    CHECK(z3.re().contains_rational(frac(-1, 2)));
    RealBall im2 = z3.im() * z3.im();
    CHECK(im2.contains_rational(frac(3, 4)));
}

TEST_CASE("to_ball exactness: squaring re-encloses the radicand") {
    for (long d : {-7L, -11L, -43L, -163L}) {
        QuadSurd t(3, 1, 2, d);
        ComplexBall b = t.to_ball(256);
        // (2 theta - 3)^2 = d
        ComplexBall two_theta_m3 = b + b - ComplexBall::from_int(3, 256);
        ComplexBall sq = two_theta_m3 * two_theta_m3;
        CHECK(sq.re().contains_rational(Rational(d)));
        CHECK(sq.im().contains_rational(Rational(0)));
        CHECK(sq.re().rad_log2() < -240);
    }
    for (long d : {-4L, -8L, -20L}) {
        QuadSurd t(0, 1, 2, d);
        ComplexBall b = t.to_ball(256);
        ComplexBall sq = (b + b) * (b + b);
        CHECK(sq.re().contains_rational(Rational(d)));
        CHECK(sq.re().rad_log2() < -240);
    }
}

TEST_CASE("|q| enclosure matches the scalar exponential") {
    for (long d : {-7L, -8L, -11L, -163L}) {
        QuadSurd t = (mod_pos(d, 4L) == 0) ? QuadSurd(0, 1, 2, d) : QuadSurd(3, 1, 2, d);
        RealBall qabs = exp_2pi_i(t, 256).abs();
        RealBall expected = (-(RealBall::pi(256) * RealBall::sqrt_integer(Integer(-d), 256))).exp();
        CHECK(qabs.overlaps(expected));
        CHECK(qabs.certainly_less_one());
    }
}

TEST_CASE("containment under precision doubling (property)") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30), op(0, 3);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // random expression tree over rationals, evaluated at two precisions
        std::vector<Rational> leaves;
        for (int i = 0; i < 5; ++i) leaves.emplace_back(num(rng), den(rng));
        auto eval = [&](mpfr_prec_t p) {
            RealBall acc = RealBall::from_rational(leaves[0], p);
            for (int i = 1; i < 5; ++i) {
                RealBall x = RealBall::from_rational(leaves[i], p);
                switch (op(rng) % 4) {
                    case 0: acc = acc + x; break;
                    case 1: acc = acc - x; break;
                    case 2: acc = acc * x; break;
                    case 3: acc = (acc * acc) + x; break;
                }
            }
            return (acc * acc + RealBall::from_int(1, p)).sqrt().log();
        };
        auto rng_state = rng;
        RealBall lowp = eval(96);
        rng = rng_state;
        RealBall highp = eval(192);
        CHECK(lowp.contains_ball(highp));
        ++checked;
    }
    CHECK(checked == 100);
}

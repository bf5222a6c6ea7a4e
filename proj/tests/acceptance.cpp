// Acceptance suite: one pass/fail line per criterion, each with its stated
// tolerance and time budget pinned in code.  Exit status is the number of
// failing criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cmf/cmf.hpp"

using namespace cmf;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            note = why;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Table 1 reproduction: exact recognition at <= 1024 bits, < 5 s total.
Outcome criterion1() {
    Outcome o;
    struct Row {
        long d;
        const char* j;
        long g2;
    };
    const Row rows[] = {{-3, "0", 0},
                        {-4, "1728", 12},
                        {-7, "-3375", -15},
                        {-8, "8000", 20},
                        {-11, "-32768", -32},
                        {-19, "-884736", -96},
                        {-43, "-884736000", -960},
                        {-67, "-147197952000", -5280},
                        {-163, "-262537412640768000", -640320}};
    auto t0 = std::chrono::steady_clock::now();
    for (const Row& r : rows) {
        RecognizedPoly pj = recognize_with_retry(
            [&](mpfr_prec_t p) { return std::vector<ComplexBall>{eval_j(theta_K(r.d), p)}; },
            128, 1024);
        RecognizedPoly pg = recognize_with_retry(
            [&](mpfr_prec_t p) { return std::vector<ComplexBall>{eval_gamma2(theta_K(r.d), p)}; },
            128, 1024);
        o.require(-pj.coeffs[0] == Integer(r.j), "j mismatch at d=" + std::to_string(r.d));
        o.require(-pg.coeffs[0] == Integer(r.g2), "gamma2 mismatch at d=" + std::to_string(r.d));
    }
    double dt = seconds_since(t0);
    o.require(dt < 5.0, "exceeded 5 s budget");
    return o;
}

// 2. g01 g10 g11 contains 2 zeta_8 with radius < 2^-100 at 256 bits, 5 points, < 1 s.
Outcome criterion2() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<QuadSurd> pts = {theta_K(-7), theta_K(-8), theta_K(-11), QuadSurd(0, 1, 2, -4),
                                 QuadSurd(1, 3, 3, -4)};
    ComplexBall target = root_of_unity(8, 1, 256) * RealBall::from_int(2, 256);
    for (const QuadSurd& tau : pts) {
        ComplexBall prod = eval_siegel(SiegelIndex(0, 1, 2), tau, 256) *
                           eval_siegel(SiegelIndex(1, 0, 2), tau, 256) *
                           eval_siegel(SiegelIndex(1, 1, 2), tau, 256);
        o.require(prod.overlaps(target), "product does not enclose 2 zeta_8");
        o.require(prod.re().rad_log2() < -100 && prod.im().rad_log2() < -100,
                  "radius not below 2^-100");
    }
    o.require(seconds_since(t0) < 1.0, "exceeded 1 s budget");
    return o;
}

// 3. The three Weber square identities overlap at 5 points, < 1 s.
Outcome criterion3() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<QuadSurd> pts = {theta_K(-11), theta_K(-8), theta_K(-7), QuadSurd(0, 1, 2, -4),
                                 QuadSurd(1, 3, 3, -4)};
    for (const QuadSurd& tau : pts) {
        mpfr_prec_t p = 192;
        ComplexBall f = eval_weber(WeberKind::f, tau, p);
        ComplexBall f1 = eval_weber(WeberKind::f1, tau, p);
        ComplexBall f2 = eval_weber(WeberKind::f2, tau, p);
        o.require((f * f).overlaps(root_of_unity(8, 5, p) * eval_siegel(SiegelIndex(1, 1, 2), tau, p)),
                  "f^2 identity fails");
        o.require((f1 * f1).overlaps(-eval_siegel(SiegelIndex(1, 0, 2), tau, p)),
                  "f1^2 identity fails");
        o.require((f2 * f2).overlaps(root_of_unity(4, 3, p) * eval_siegel(SiegelIndex(0, 1, 2), tau, p)),
                  "f2^2 identity fails");
    }
    o.require(seconds_since(t0) < 1.0, "exceeded 1 s budget");
    return o;
}

// 4. For every fundamental d = 5 mod 8 in [-200, -11], the three level-2
// conjugates multiply to exactly -4096, < 10 s.
Outcome criterion4() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (long d = -11; d >= -200; --d) {
        if (!is_fundamental(d) || mod_pos(d, 8L) != 5) continue;
        FieldData F(d);
        RecognizedPoly p = recognize_with_retry(
            [&](mpfr_prec_t pr) {
                std::vector<ComplexBall> c = conjugates_over_HK(2, F, 12, pr);
                ComplexBall prod = ComplexBall::from_int(1, pr);
                for (const ComplexBall& v : c) prod = prod * v;
                return std::vector<ComplexBall>{prod};
            },
            128, 1024);
        o.require(-p.coeffs[0] == Integer(-4096), "norm != -4096 at d=" + std::to_string(d));
    }
    o.require(seconds_since(t0) < 10.0, "exceeded 10 s budget");
    return o;
}

// 5. For every fundamental d in [-100, -7] with 2 not inert: the norm
// recognizes (through its Hilbert conjugates) to a nonzero algebraic integer
// dividing 2^12, and the singular-value formula recovers j, < 20 s.
Outcome criterion5() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (long d = -7; d >= -100; --d) {
        if (!is_fundamental(d) || kronecker_symbol(d, 2) == -1) continue;
        FieldData F(d);
        RecognizedPoly p = recognize_with_retry(
            [&](mpfr_prec_t pr) { return hilbert_conjugates(2, F, pr); }, 192);
        o.require(p.degree() == F.h, "degree != h at d=" + std::to_string(d));
        o.require(p.constant_term() != 0, "zero constant at d=" + std::to_string(d));
        o.require(divides_two_pow_twelve(p), "x does not divide 2^12 at d=" + std::to_string(d));

        ComplexBall x = norm_over_HK(2, F, 256);
        ComplexBall jv = singular_j_from_x(x, singular_case_of(d));
        o.require(jv.overlaps(eval_j(theta_K(d), 256)),
                  "singular j mismatch at d=" + std::to_string(d));
    }
    o.require(seconds_since(t0) < 20.0, "exceeded 20 s budget");
    return o;
}

// 6. Kubert-Lang checker on the four worked families: true/true/true/false.
Outcome criterion6() {
    Outcome o;
    ExponentFamily a(2), b(6), c(3), e(2);
    a.add(SiegelIndex(0, 1, 2), 12);
    b.add(SiegelIndex(0, 3, 6), 4);
    c.add(SiegelIndex(0, 1, 3), 12);
    e.add(SiegelIndex(0, 1, 2), 1);
    o.require(check_level(a), "g^12 at N=2 should pass");
    o.require(check_level(b), "g^4 at N=6 should pass");
    o.require(check_level(c), "g_{(0,1/3)}^12 at N=3 should pass");
    o.require(!check_level(e), "g^1 at N=2 should fail");
    return o;
}

// 7. Degree formulas, asserted with the stated constants.
Outcome criterion7() {
    Outcome o;
    o.require(field_degree(2) == 6, "field_degree(2) != 6");
    o.require(field_degree(3) == 24, "field_degree(3) != 24");
    o.require(field_degree(4) == 96,
              "stated constant 96 contradicts the defining formula: (4^4/2)(1/2)(3/4) = 48 = "
              "|GL2(Z/4)/{+-1}|; implementation returns 48 (see decisions ledger)");
    o.require(generation_failure_bound(2) == 12, "generation_failure_bound(2) != 12");
    o.require(generation_failure_bound(3) == 108, "generation_failure_bound(3) != 108");
    o.require(generation_failure_bound(4) == 864, "generation_failure_bound(4) != 864");
    o.require(ray_class_degree(2, FieldData(-7)) == 1, "ray degree (2,-7) != 1");
    o.require(ray_class_degree(2, FieldData(-8)) == 2, "ray degree (2,-8) != 2");
    o.require(ray_class_degree(2, FieldData(-11)) == 3, "ray degree (2,-11) != 3");
    return o;
}

// 8. Class-number-one determination with passing tail certificates, < 60 s.
Outcome criterion8() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ClassNumberOneResult r = class_number_one_search();
    o.require(r.case_i == std::vector<long>{-7, -8}, "case (i) set mismatch");
    o.require(r.case_ii.empty(), "case (ii) should be empty");
    o.require(r.case_iii == std::vector<long>{-11, -19, -43, -67, -163},
              "case (iii) set mismatch");
    for (const BoundCertificate& c : r.certificates)
        o.require(c.passes, "certificate fails at d=" + std::to_string(c.d));
    o.require(seconds_since(t0) < 60.0, "exceeded 60 s budget");
    return o;
}

// 9. Class-number-two split search and the eighteen-field list, < 30 s.
Outcome criterion9() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ClassNumberTwoResult r = class_number_two_split_search();
    o.require(r.split_two == std::vector<long>{-15}, "two-split set != [-15]");
    for (const BoundCertificate& c : r.certificates)
        o.require(c.passes, "certificate fails at d=" + std::to_string(c.d));
    std::vector<long> expected = {-15,  -20,  -24,  -35,  -40,  -51,  -52,  -88,  -91,
                                  -115, -123, -148, -187, -232, -235, -267, -403, -427};
    std::vector<long> got = class_number_two_list(-500);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    o.require(got == expected, "eighteen-field list mismatch");
    o.require(seconds_since(t0) < 30.0, "exceeded 30 s budget");
    return o;
}

// 10. Heegner pipeline: the six candidate values, their discriminants, and
// fast-path/oracle agreement on every hit, < 30 s.
Outcome criterion10() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<HeegnerHit> hits = heegner_hits(1000);
    std::set<Integer> gammas;
    for (const HeegnerHit& h : hits) {
        gammas.insert(h.gamma);
        auto [t1, t2, t3] = detail::mult_by_x4_charpoly(Integer(h.a), h.b, Integer(h.c));
        o.require(t1 == 0 && t3 == 16 && t2 == -h.gamma,
                  "fast path disagrees with charpoly oracle");
    }
    for (long g : {0L, -32L, -96L, -960L, -5280L, -640320L})
        o.require(gammas.count(Integer(g)) == 1,
                  "missing candidate gamma = " + std::to_string(g));

    o.require(match_discriminant(Integer(0)).value_or(0) == -3, "gamma 0 should map to -3");
    struct M {
        long g, d;
    };
    for (M m : {M{-32, -11}, M{-96, -19}, M{-960, -43}, M{-5280, -67}, M{-640320, -163}})
        o.require(match_discriminant(Integer(m.g)).value_or(0) == m.d,
                  "gamma " + std::to_string(m.g) + " should map to " + std::to_string(m.d));
    o.require(seconds_since(t0) < 30.0, "exceeded 30 s budget");
    return o;
}

// 11. Property suites, zero failures allowed.
Outcome criterion11() {
    Outcome o;

    // ball containment under precision doubling, 100 random expressions
    {
        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<long> num(-50, 50), den(1, 30), op(0, 3);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rational> leaves;
            for (int i = 0; i < 5; ++i) leaves.emplace_back(frac(num(rng), den(rng)));
            auto rng_state = rng;
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
            RealBall low = eval(96);
            rng = rng_state;
            RealBall high = eval(192);
            o.require(low.contains_ball(high), "containment under doubling failed");
        }
    }

    // transform_sl2 numerical oracle, 50 random (idx, gamma)
    {
        std::mt19937_64 rng(4242);
        std::uniform_int_distribution<long> small(-4, 4);
        QuadSurd tau = theta_K(-163);
        int done = 0;
        while (done < 50) {
            long a = small(rng), b = small(rng), c = small(rng);
            long ad = 1 + b * c;
            if (a == 0 || ad % a != 0) continue;
            long d = ad / a;
            long n = 2 + (done % 7);
            long ia = (done * 5 + 1) % n, ib = (done * 3) % n;
            if (ia == 0 && ib == 0) ia = 1;
            SiegelIndex idx(ia, ib, n);
            PhasedIndex tr = transform_sl2(idx, a, b, c, d);
            QuadSurd gtau = tau.moebius(a, b, c, d);
            ComplexBall lhs = eval_siegel(idx, gtau, 128);
            ComplexBall rhs = unit_phase(tr.phase, 128) * eval_siegel(tr.index, tau, 128);
            o.require(lhs.overlaps(rhs), "transform oracle mismatch");
            ++done;
        }
    }

    // gl2_action right-action law, 200 random triples
    {
        std::mt19937_64 rng(99);
        int done = 0;
        while (done < 200) {
            long n = 2 + static_cast<long>(rng() % 7);
            std::vector<GL2ModN> g = enumerate_gl2(n);
            long ia = static_cast<long>(rng() % n), ib = static_cast<long>(rng() % n);
            if (ia == 0 && ib == 0) continue;
            SiegelIndex idx(ia, ib, n);
            const GL2ModN& x = g[rng() % g.size()];
            const GL2ModN& y = g[rng() % g.size()];
            o.require(gl2_action(idx, x.mul(y)) == gl2_action(gl2_action(idx, x), y),
                      "right-action law failed");
            ++done;
        }
    }

    // Siegel modulus bound soundness, 50 random evaluations
    {
        std::mt19937_64 rng(8899);
        long ds[] = {-7, -11, -19, -43};
        int done = 0;
        while (done < 50) {
            long d = ds[rng() % 4];
            long n = 2 + static_cast<long>(rng() % 8);
            long ia = 1 + static_cast<long>(rng() % (n - 1));
            long ib = static_cast<long>(rng() % n);
            SiegelIndex idx(ia, ib, n);
            Rational r1 = idx.r1();
            QuadSurd tau = theta_K(d);
            RealBall A = exp_2pi_i(tau, 160).abs();
            RealBall gabs = eval_siegel(idx, tau, 160).abs();
            if (r1 > 0 && r1 <= Rational(1, 2)) {
                o.require(!(siegel_bound_a(r1, A) - gabs).is_negative(), "bound (i) violated");
                ++done;
            } else if (r1 == 0) {
                o.require(!(siegel_bound_0b(idx.r2(), A) - gabs).is_negative(),
                          "bound (ii) violated");
                ++done;
            }
        }
    }

    // decompose round-trip, 100 random alpha
    {
        std::mt19937_64 rng(31337);
        int done = 0;
        while (done < 100) {
            long n = 2 + static_cast<long>(rng() % 11);
            GL2ModN alpha(n, rng() % n, rng() % n, rng() % n, rng() % n);
            if (!alpha.invertible()) continue;
            Decomposition dec = decompose(alpha);
            bool det_ok = dec.alpha1[0] * dec.alpha1[3] - dec.alpha1[1] * dec.alpha1[2] == 1;
            GL2ModN recon(n, dec.alpha1[0], dec.alpha1[1] * dec.d, dec.alpha1[2],
                          dec.alpha1[3] * dec.d);
            o.require(det_ok && recon == alpha, "decompose round-trip failed");
            ++done;
        }
    }
    return o;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "Table 1 reproduction (nine exact singular values)", criterion1},
        {2, "Siegel product identity encloses 2 zeta_8 (radius < 2^-100)", criterion2},
        {3, "Weber square identities at five points", criterion3},
        {4, "level-2 conjugate product is -4096 for d = 5 mod 8 in [-200, -11]", criterion4},
        {5, "norms divide 2^12 and recover j for d in [-100, -7], 2 not inert", criterion5},
        {6, "Kubert-Lang checker on the four worked families", criterion6},
        {7, "degree formulas (field degrees, counting bound, ray degrees)", criterion7},
        {8, "class-number-one determination with certified tail", criterion8},
        {9, "class-number-two split search and the eighteen-field list", criterion9},
        {10, "Heegner coefficient pipeline with oracle cross-check", criterion10},
        {11, "property suites (containment/transform/action/bounds/decompose)", criterion11},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.note = std::string("exception: ") + ex.what();
        }
        double dt = seconds_since(t0);
        if (o.pass) {
            std::printf("PASS  criterion %2d: %s (%.2f s)\n", e.id, e.label, dt);
        } else {
            std::printf("FAIL  criterion %2d: %s (%.2f s) -- %s\n", e.id, e.label, dt,
                        o.note.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}

#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cmf/error.hpp"
#include "cmf/modlevel.hpp"
#include "cmf/quadforms.hpp"

namespace cmf {

// Arithmetic data of an imaginary quadratic field: min(theta_K, Q) = X^2 + BX + C.
struct FieldData {
    long d;        // fundamental discriminant
    long B, C;     // X^2 + BX + C
    long omega_K;  // number of roots of unity
    long h;        // class number

    explicit FieldData(long d_) : d(d_) {
        require_fundamental(d);
        if (mod_pos(d, 4L) == 0) {
            B = 0;
            C = -d / 4;
        } else {
            B = -3;
            C = (9 - d) / 4;
        }
        omega_K = (d == -3) ? 6 : (d == -4) ? 4 : 2;
        h = class_number(d);
    }
};

// W_{N,theta_K} = { [[t - Bs, -Cs], [s, t]] invertible }, canonical mod +-1.
inline std::vector<GL2ModN> w_group(long n, const FieldData& F) {
    if (n < 2) throw domain_error("w_group requires n >= 2");
    std::set<GL2ModN> out;
    for (long t = 0; t < n; ++t)
        for (long s = 0; s < n; ++s) {
            GL2ModN g(n, t - F.B * s, -F.C * s, s, t);
            if (g.invertible()) out.insert(g);
        }
    return {out.begin(), out.end()};
}

// Kernel of W_{N,theta_K} -> Gal(K_(N)/H_K): the images of the torsion units
// t + s theta as [[t - Bs, -Cs], [s, t]], so extra classes exist only for
// d = -3 (multiplication by zeta_3 and -zeta_6) and d = -4 (multiplication
// by i).  Integer matrices, reduced mod n.
inline std::vector<GL2ModN> kernel_group(long n, const FieldData& F) {
    if (n < 2) throw domain_error("kernel_group requires n >= 2");
    std::set<GL2ModN> out;
    out.insert(GL2ModN::identity(n));
    if (F.d == -3) {
        out.insert(GL2ModN(n, 1, -3, 1, -2));   // zeta_3 = theta - 2
        out.insert(GL2ModN(n, -2, 3, -1, 1));   // -zeta_6 = 1 - theta
    } else if (F.d == -4) {
        out.insert(GL2ModN(n, 0, -1, 1, 0));    // i = theta
    }
    return {out.begin(), out.end()};
}

// Coset representatives of w_group modulo kernel_group: the concrete model of
// Gal(K_(N)/H_K).  Each coset is named by its lexicographically least member.
inline std::vector<GL2ModN> gal_over_HK(long n, const FieldData& F) {
    std::vector<GL2ModN> w = w_group(n, F);
    std::vector<GL2ModN> ker = kernel_group(n, F);
    std::set<GL2ModN> seen;
    std::vector<GL2ModN> reps;
    for (const GL2ModN& g : w) {
        if (seen.count(g)) continue;
        GL2ModN rep = g;
        for (const GL2ModN& k : ker) {
            GL2ModN gk = g.mul(k);
            seen.insert(gk);
            if (gk < rep) rep = gk;
        }
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

// Form matrix u_Q of Shimura's reciprocity law, reduced mod p.  The three
// cases are exhaustive for a reduced form of fundamental discriminant:
// gcd(a, b, c) = 1 rules out p | a, b, c simultaneously, and b's parity makes
// every listed entry integral (asserted, not assumed).
inline GL2ModN u_Q(const BQF& q, long p, const FieldData& F) {
    if (q.disc() != F.d) throw domain_error("u_Q: form discriminant mismatch");
    if (!q.is_reduced()) throw domain_error("u_Q requires a reduced form");
    const long a = q.a, b = q.b, c = q.c;
    if (mod_pos(F.d, 4L) == 0) {
        if (mod_pos(b, 2L) != 0) throw domain_error("u_Q: odd b with d = 0 mod 4");
        long bh = b / 2;
        if (a % p != 0) return GL2ModN(p, a, bh, 0, 1);
        if (c % p != 0) return GL2ModN(p, -bh, -c, 1, 0);
        return GL2ModN(p, -a - bh, -c - bh, 1, -1);
    }
    if (mod_pos(b, 2L) != 1) throw domain_error("u_Q: even b with d = 1 mod 4");
    long bp = (3 + b) / 2, bm = (3 - b) / 2;
    if (a % p != 0) return GL2ModN(p, a, bp, 0, 1);
    if (c % p != 0) return GL2ModN(p, bm, -c, 1, 0);
    return GL2ModN(p, -a + bm, -c - bp, 1, -1);
}

// Elements of Gal(K_(m)/H_K) acting trivially on K_(n): the cosets whose
// reduction mod n falls into kernel(n) mod +-1.  Concrete model of
// Gal(K_(m)/K_(n)) for n | m.
inline std::vector<GL2ModN> relative_galois(long m, long n, const FieldData& F) {
    if (m % n != 0) throw domain_error("relative_galois requires n | m");
    std::vector<GL2ModN> gm = gal_over_HK(m, F);
    std::vector<GL2ModN> kn = kernel_group(n, F);
    std::set<GL2ModN> kset(kn.begin(), kn.end());
    std::vector<GL2ModN> out;
    for (const GL2ModN& g : gm)
        if (kset.count(g.reduce_mod(n))) out.push_back(g);
    return out;
}

}  // namespace cmf

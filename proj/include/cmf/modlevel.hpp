#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmf/error.hpp"
#include "cmf/rational.hpp"
#include "cmf/siegel.hpp"

namespace cmf {

// 2x2 matrix over Z/nZ modulo {+-1}, kept as the lexicographically smaller of
// (a,b,c,d) and its negation.  Stable representatives make orbit enumeration
// a plain set computation.
struct GL2ModN {
    long n;
    std::array<long, 4> m;  // a, b, c, d

    GL2ModN(long n_, long a, long b, long c, long d) : n(n_) {
        if (n <= 0) throw domain_error("GL2ModN modulus must be positive");
        m = {mod_pos(a, n), mod_pos(b, n), mod_pos(c, n), mod_pos(d, n)};
        canonicalize();
    }

    static GL2ModN identity(long n) { return GL2ModN(n, 1, 0, 0, 1); }

    long det() const { return mod_pos(m[0] * m[3] - m[1] * m[2], n); }

    bool invertible() const { return std::gcd(det(), n) == 1; }

    GL2ModN mul(const GL2ModN& o) const {
        if (n != o.n) throw domain_error("GL2ModN modulus mismatch");
        return GL2ModN(n, m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                       m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]);
    }

    GL2ModN inverse() const {
        long dinv = inv_mod(det(), n);
        return GL2ModN(n, m[3] * dinv, -m[1] * dinv, -m[2] * dinv, m[0] * dinv);
    }

    GL2ModN reduce_mod(long k) const {
        if (n % k != 0) throw domain_error("reduce_mod: modulus does not divide level");
        return GL2ModN(k, m[0], m[1], m[2], m[3]);
    }

    bool operator==(const GL2ModN& o) const { return n == o.n && m == o.m; }
    bool operator<(const GL2ModN& o) const { return std::tie(n, m) < std::tie(o.n, o.m); }

    std::string str() const {
        std::ostringstream os;
        os << "[" << m[0] << "," << m[1] << ";" << m[2] << "," << m[3] << "]";
        return os.str();
    }

    static long inv_mod(long a, long n) {
        long t = 0, newt = 1, r = n, newr = mod_pos(a, n);
        while (newr != 0) {
            long q = r / newr;
            std::swap(t -= q * newt, newt);
            std::swap(r -= q * newr, newr);
        }
        if (r != 1) throw domain_error("element not invertible mod n");
        return mod_pos(t, n);
    }

private:
    void canonicalize() {
        std::array<long, 4> neg = {mod_pos(-m[0], n), mod_pos(-m[1], n), mod_pos(-m[2], n),
                                   mod_pos(-m[3], n)};
        if (neg < m) m = neg;
    }
};

// [F_N : F_1] = |GL2(Z/N)/{+-1}|: 6 for N = 2, else (N^4/2) prod (1-p^-1)(1-p^-2).
inline Integer field_degree(long n) {
    if (n < 2) throw domain_error("field_degree requires n >= 2");
    if (n == 2) return 6;
    Rational deg = frac(Integer(n) * n * n * n, Integer(2));
    long rest = n;
    for (long p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        deg *= frac(p - 1, p) * frac(Integer(p) * p - 1, Integer(p) * p);
        while (rest % p == 0) rest /= p;
    }
    deg.canonicalize();
    if (deg.get_den() != 1) throw domain_error("field_degree: non-integral result");
    return deg.get_num();
}

// All canonical representatives of GL2(Z/n)/{+-1}.
inline std::vector<GL2ModN> enumerate_gl2(long n, long cap = 24) {
    if (n < 2) throw domain_error("enumerate_gl2 requires n >= 2");
    if (n > cap) throw domain_error("enumerate_gl2: level exceeds cap");
    std::set<GL2ModN> out;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c)
                for (long d = 0; d < n; ++d) {
                    GL2ModN g(n, a, b, c, d);
                    if (g.invertible()) out.insert(g);
                }
    return {out.begin(), out.end()};
}

// Right action (r1, r2) -> (r1 a + r2 c, r1 b + r2 d) on indices, reduced mod
// Z^2 and mod +-1.  Well-defined on the 12N/gcd(6,N)-th powers only.
inline SiegelIndex gl2_action(const SiegelIndex& idx, const GL2ModN& alpha) {
    if (alpha.n % idx.n != 0) throw domain_error("gl2_action: denominator mismatch");
    auto [x, y] = idx.at_level(alpha.n);
    long n = alpha.n;
    long na = mod_pos(x * alpha.m[0] + y * alpha.m[2], n);
    long nb = mod_pos(x * alpha.m[1] + y * alpha.m[3], n);
    if (na == 0 && nb == 0) throw domain_error("gl2_action produced an integral index");
    long ma = mod_pos(-na, n), mb = mod_pos(-nb, n);
    if (std::tie(ma, mb) < std::tie(na, nb)) {
        na = ma;
        nb = mb;
    }
    return SiegelIndex(na, nb, n);
}

// alpha = (alpha1 mod n) * diag(1, det alpha) with alpha1 in SL2(Z).
struct Decomposition {
    std::array<long, 4> alpha1;  // integer matrix, det = 1
    long d;                      // det(alpha) mod n
};

inline Decomposition decompose(const GL2ModN& alpha) {
    long n = alpha.n;
    long dval = alpha.det();
    if (std::gcd(dval, n) != 1) throw domain_error("decompose: determinant not invertible");
    long dinv = GL2ModN::inv_mod(dval, n);
    // beta = alpha * diag(1, dinv), det beta = 1 mod n
    long a = alpha.m[0], b = mod_pos(alpha.m[1] * dinv, n);
    long c = alpha.m[2], d = mod_pos(alpha.m[3] * dinv, n);

    // Lift the bottom row to a coprime integer pair congruent mod n.
    long cl = c, dl = d;
    if (cl == 0 && dl == 0) throw domain_error("decompose: zero row");
    if (std::gcd(cl, dl) != 1) {
        if (cl == 0) cl = n;
        long guard = 0;
        while (std::gcd(cl, dl) != 1) {
            dl += n;
            if (++guard > 64 * n) throw domain_error("decompose: row lift stalled");
        }
    }

    // Extended gcd: u*dl + v*cl = 1 gives a det-1 matrix with that bottom row.
    long u, v;
    {
        long old_r = dl, r = cl, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            long q = old_r / r;
            std::swap(old_r -= q * r, r);
            std::swap(old_s -= q * s, s);
            std::swap(old_t -= q * t, t);
        }
        if (old_r < 0) {
            old_s = -old_s;
            old_t = -old_t;
        }
        u = old_s;
        v = old_t;
    }
    long a1 = u, b1 = -v;  // a1*dl - b1*cl = 1

    // Left-multiply by [[1, t],[0, 1]] to match the top row mod n.
    long t = mod_pos(a1 * b - a * b1, n);
    a1 += t * cl;
    b1 += t * dl;

    // Size-reduce the top row by multiples of n*(bottom row).
    if (cl != 0 || dl != 0) {
        double num = static_cast<double>(a1) * cl + static_cast<double>(b1) * dl;
        double den = (static_cast<double>(cl) * cl + static_cast<double>(dl) * dl) * n;
        long k = std::lround(num / den);
        a1 -= k * n * cl;
        b1 -= k * n * dl;
    }

    if (a1 * dl - b1 * cl != 1) throw domain_error("decompose: lift failed");
    return {{a1, b1, cl, dl}, dval};
}

// Finitely supported exponent family {m(r1,r2)} at level n.
struct ExponentFamily {
    long n;
    std::map<SiegelIndex, long> entries;

    explicit ExponentFamily(long n_) : n(n_) {
        if (n < 2) throw domain_error("ExponentFamily level must be >= 2");
    }

    void add(const SiegelIndex& idx, long mult) {
        if (n % idx.n != 0)
            throw domain_error("ExponentFamily: index denominator does not divide level");
        long& v = entries[idx];
        v += mult;
        if (v == 0) entries.erase(idx);
    }
};

// Kubert-Lang sufficient criterion for a Siegel product to lie in F_N.  The
// congruences are sufficient only: false does not certify non-membership.
struct LevelCheck {
    bool ok;
    std::array<bool, 4> congruence;  // quadratic r1, quadratic r2, cross, weight
};

inline LevelCheck check_level_detail(const ExponentFamily& fam) {
    Integer s11 = 0, s22 = 0, s12 = 0, sm = 0;
    long n = fam.n;
    for (const auto& [idx, mult] : fam.entries) {
        auto [x, y] = idx.at_level(n);
        s11 += Integer(mult) * x * x;
        s22 += Integer(mult) * y * y;
        s12 += Integer(mult) * x * y;
        sm += mult;
    }
    Integer mod_q = Integer(std::gcd(2L, n)) * n;
    LevelCheck r{};
    r.congruence[0] = mod_pos(s11, mod_q) == 0;
    r.congruence[1] = mod_pos(s22, mod_q) == 0;
    r.congruence[2] = mod_pos(s12, Integer(n)) == 0;
    r.congruence[3] = mod_pos(Integer(std::gcd(12L, n)) * sm, Integer(12)) == 0;
    r.ok = r.congruence[0] && r.congruence[1] && r.congruence[2] && r.congruence[3];
    return r;
}

inline bool check_level(const ExponentFamily& fam) {
    return check_level_detail(fam).ok;
}

// Text syntax "a/n,b/n:m;a/n,b/n:m" for exponent families.
inline ExponentFamily parse_exponent_family(const std::string& text, long n) {
    ExponentFamily fam(n);
    std::stringstream ss(text);
    std::string term;
    bool any = false;
    while (std::getline(ss, term, ';')) {
        if (term.empty()) continue;
        long a, an, b, bn, mult;
        char c1, c2, c3, c4;
        std::istringstream ts(term);
        if (!(ts >> a >> c1 >> an >> c2 >> b >> c3 >> bn >> c4 >> mult) || c1 != '/' ||
            c2 != ',' || c3 != '/' || c4 != ':')
            throw domain_error("cannot parse exponent family term '" + term + "'");
        if (an <= 0 || bn <= 0) throw domain_error("index denominators must be positive");
        if (mod_pos(a, an) == 0 && mod_pos(b, bn) == 0)
            throw domain_error("index lies in Z^2: '" + term + "'");
        Rational r1(a, an), r2(b, bn);
        fam.add(SiegelIndex::from_rationals(r1, r2), mult);
        any = true;
    }
    if (!any) throw domain_error("empty exponent family");
    return fam;
}

}  // namespace cmf

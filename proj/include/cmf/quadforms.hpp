#pragma once

#include <numeric>
#include <vector>

#include "cmf/error.hpp"
#include "cmf/quadsurd.hpp"
#include "cmf/rational.hpp"

namespace cmf {

inline bool is_valid_discriminant(long d) {
    return d < 0 && (mod_pos(d, 4L) == 0 || mod_pos(d, 4L) == 1);
}

// Field discriminant of the maximal order: d squarefree for d = 1 mod 4,
// d/4 squarefree and = 2, 3 mod 4 for d = 0 mod 4.
inline bool is_fundamental(long d) {
    if (!is_valid_discriminant(d)) return false;
    if (mod_pos(d, 4L) == 1) return is_square_free(Integer(d));
    long m = d / 4;
    long mm = mod_pos(m, 4L);
    return is_square_free(Integer(m)) && (mm == 2 || mm == 3);
}

inline void require_fundamental(long d) {
    if (!is_valid_discriminant(d)) throw domain_error("not a discriminant: " + std::to_string(d));
    if (!is_fundamental(d)) throw domain_error("non-fundamental discriminant: " + std::to_string(d));
}

// Primitive reduced binary quadratic form a X^2 + b XY + c Y^2.
struct BQF {
    long a, b, c;

    long disc() const { return b * b - 4 * a * c; }

    bool is_reduced() const {
        return a >= 1 && ((-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c));
    }

    bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
};

// All reduced forms of discriminant d, ascending (a, b); the identity form
// comes first by construction.
inline std::vector<BQF> reduced_forms(long d) {
    if (!is_valid_discriminant(d)) throw domain_error("not a discriminant: " + std::to_string(d));
    std::vector<BQF> out;
    for (long a = 1; 3 * a * a <= -d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            BQF f{a, b, c};
            if (f.is_reduced() && std::gcd(std::gcd(a, b), c) == 1) out.push_back(f);
        }
    }
    return out;
}

inline long class_number(long d) {
    return static_cast<long>(reduced_forms(d).size());
}

// theta_K, the standard generator of O_K over Z.
inline QuadSurd theta_K(long d) {
    require_fundamental(d);
    if (mod_pos(d, 4L) == 0) return QuadSurd(0, 1, 2, d);
    return QuadSurd(3, 1, 2, d);
}

// theta_Q = (-b + sqrt(d))/(2a), the CM point of a form.
inline QuadSurd theta_Q(const BQF& q) {
    if (!q.is_reduced()) throw domain_error("theta_Q requires a reduced form");
    return QuadSurd(-q.b, 1, 2 * q.a, q.disc());
}

// Splitting of a prime p in Q(sqrt(d)): +1 split, -1 inert, 0 ramified.
inline int kronecker_symbol(long d, long p) {
    if (p < 2) throw domain_error("kronecker_symbol requires a prime");
    if (p == 2) {
        long m = mod_pos(d, 8L);
        if (m == 1) return 1;
        if (m == 5) return -1;
        return 0;
    }
    long r = mod_pos(d, p);
    if (r == 0) return 0;
    // Euler's criterion
    Integer base = r, mod = p, acc = 1;
    long e = (p - 1) / 2;
    while (e) {
        if (e & 1) acc = mod_pos(acc * base, mod);
        base = mod_pos(base * base, mod);
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

}  // namespace cmf

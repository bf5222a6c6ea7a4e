#pragma once

#include <string>

#include <json.hpp>

#include "cmf/ball.hpp"
#include "cmf/classnum.hpp"
#include "cmf/invariants.hpp"

namespace cmf {

// Decimal midpoint/radius strings; never bare floats.
inline nlohmann::json ball_json(const RealBall& b, size_t digits = 30) {
    return {{"mid", b.mid_str(digits)}, {"rad", b.rad_str()}};
}

inline nlohmann::json ball_json(const ComplexBall& b, size_t digits = 30) {
    return {{"re", ball_json(b.re(), digits)}, {"im", ball_json(b.im(), digits)}};
}

inline nlohmann::json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();  // beyond 64 bits, keep it exact as a decimal string
}

// {"d": int, "n": int, "coeffs": [int], "precision_bits": int, "residual": float-string}
inline nlohmann::json recognized_poly_json(const RecognizedPoly& p, long d, long n) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Integer& c : p.coeffs) coeffs.push_back(integer_json(c));
    return {{"d", d},
            {"n", n},
            {"coeffs", coeffs},
            {"precision_bits", p.precision_used},
            {"residual", p.residual.mid_str(6)}};
}

// {"d": int, "case": str, "bound": float-string, "passes": bool, "precision_bits": int}
inline nlohmann::json certificate_json(const BoundCertificate& c) {
    return {{"d", c.d},
            {"case", bound_case_name(c.case_tag)},
            {"bound", c.bound_value.mid_str(12)},
            {"passes", c.passes},
            {"precision_bits", c.precision_bits}};
}

}  // namespace cmf

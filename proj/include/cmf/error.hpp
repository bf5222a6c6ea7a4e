#pragma once

#include <stdexcept>
#include <string>

namespace cmf {

// Invalid mathematical input (non-fundamental discriminant, index in Z^2, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Enclosure could not be produced at the requested precision (ball touching a
// branch point, divisor ball containing zero, truncation cap exceeded, ...).
// Retrying at higher precision is the usual remedy.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Integer recognition: an enclosure spans two or more integers.  Retryable.
struct ambiguous_rounding_error : precision_error {
    explicit ambiguous_rounding_error(const std::string& what) : precision_error(what) {}
};

// Integer recognition: an enclosure certifiably excludes every integer.
// Not retryable; the integrality hypothesis itself failed.
struct no_integer_error : std::runtime_error {
    explicit no_integer_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmf

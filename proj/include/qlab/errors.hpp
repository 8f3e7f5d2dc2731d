#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Operands of a binary series operation live over different rings.
struct ring_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inversion (or a negative power) of a series whose constant term is not a unit.
struct non_unit_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A coefficient was requested beyond the valid truncation of a series, or a
// table is too short for the requested sweep.
struct truncation_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Exact integer arithmetic left the representable range.
struct coefficient_overflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

}  // namespace qlab

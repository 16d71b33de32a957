#pragma once

#include <stdexcept>

namespace d4l {

// requested value lies beyond the validity of a truncated expansion
struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a statistical report was requested on too small a sample
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a coefficient table fails the slice-primitive grouping its caller relies on
struct MaassViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// no stored representative exists for the requested class within the table bound
struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace d4l

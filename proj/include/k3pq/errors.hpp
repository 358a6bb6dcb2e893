#pragma once

#include <stdexcept>
#include <string>

namespace k3pq {

// Input datum violates the existence conditions for a cyclic cover.
struct AdmissibilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A request exceeds the proven or explicitly capped search bounds.
struct BoundError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An identity that must hold exactly did not; always a bug.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace k3pq

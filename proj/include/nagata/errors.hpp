#pragma once

#include <stdexcept>
#include <string>

namespace nagata {

// Bad user-supplied argument or malformed input document.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented operation precondition does not hold for the given inputs.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal contract that the construction guarantees was observed to fail;
// indicates a bug or a provider violating its declared contract.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A produced cover failed its certification check.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter ladder was exhausted without reaching a verified result.
struct LadderExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nagata

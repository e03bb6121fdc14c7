#pragma once

#include <stdexcept>

namespace torusnls {

struct WitnessNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExactnessViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct StepSizeRejected : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace torusnls

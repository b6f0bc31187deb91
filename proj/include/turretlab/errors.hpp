#pragma once

#include <stdexcept>
#include <string>

namespace turretlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateAtOrigin : Error { using Error::Error; };
struct AlreadySafe : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct OutOfParameterRange : Error { using Error::Error; };
struct InvalidEpsilon : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };
struct UnsupportedRegime : Error { using Error::Error; };
struct NonUnitVector : Error { using Error::Error; };
struct NoPreferredDirection : Error { using Error::Error; };
struct AttackNeverSucceeds : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };

}  // namespace turretlab

#pragma once

#include <stdexcept>

namespace spinqec {

// Base class for every failure condition surfaced by the public API.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoRootInBracket : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct DuplicateLabel : Error { using Error::Error; };
struct InvalidChannel : Error { using Error::Error; };
struct LabelMismatch : Error { using Error::Error; };
struct WeightMismatch : Error { using Error::Error; };
struct UnknownSupport : Error { using Error::Error; };
struct BadRegisterSize : Error { using Error::Error; };
struct ZeroProbabilityReadout : Error { using Error::Error; };
struct InvalidDistance : Error { using Error::Error; };
struct InvalidTime : Error { using Error::Error; };
struct ConfigParse : Error { using Error::Error; };
struct Indeterminate : Error { using Error::Error; };

}  // namespace spinqec

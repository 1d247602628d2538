#pragma once

#include <stdexcept>
#include <string>

namespace plan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incompatible tensor shapes or dimensions.
struct ShapeError : Error {
    using Error::Error;
};

/// Invalid configuration value (dropout rate, class count, missing sections, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Bad data encountered at runtime (negative latency, unknown relation label,
/// out-of-range class index, ...).
struct DataError : Error {
    using Error::Error;
};

/// Malformed input document (thread schema violations, embedding files).
struct ParseError : Error {
    using Error::Error;
};

/// API misuse (backward on non-scalar, optimizer step without gradients, ...).
struct UsageError : Error {
    using Error::Error;
};

} // namespace plan

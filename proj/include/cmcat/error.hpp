#pragma once

#include <stdexcept>
#include <string>

namespace cmcat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The filesystem said no: missing file, unreadable path, failed write.
struct IoError : Error {
    using Error::Error;
};

// Malformed input: bad JSON, unparsable object name, broken schema.
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input outside the supported domain (cyclic quiver,
// wild type where finite/tame is required, bound too small to resolve).
struct DomainError : Error {
    using Error::Error;
};

// A mathematical invariant failed at runtime.  Indicates a bug in this
// library, never a property of the input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace cmcat

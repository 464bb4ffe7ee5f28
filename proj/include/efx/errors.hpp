#pragma once

#include <stdexcept>
#include <string>

namespace efx {

// Semantically invalid input: bad ids, inconsistent allocation, parameter out of range.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file or unparseable literal.
struct parse_error : input_error {
    using input_error::input_error;
};

// A configured search/enumeration budget would be exceeded; the message names the required count.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A property that must hold by theorem failed at runtime: always an implementation bug.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace efx

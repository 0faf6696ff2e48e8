#pragma once

#include <stdexcept>
#include <string>

namespace macc {

/// Input files or wire formats that fail to parse or validate.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Computation refused because an enumeration guard would be exceeded.
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency check failed; indicates a bug rather than bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace macc

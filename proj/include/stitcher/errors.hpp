#pragma once

#include <stdexcept>
#include <string>

namespace stitcher {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input from the operator: malformed manifest, invalid flag value,
/// bundle that fails validation. Maps to exit code 1 in the CLI.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Evidence that cannot be parsed: unreadable firmware root, not a pcap
/// file, empty process listing. Maps to exit code 2 in the CLI.
class IngestError : public Error {
public:
    using Error::Error;
};

} // namespace stitcher

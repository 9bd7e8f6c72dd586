#pragma once

#include <stdexcept>
#include <string>

namespace stanley {

class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Seed set is not strictly increasing, has a negative element, or holds a 3-AP.
class SeedError : public Error {
   public:
    explicit SeedError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
   public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// A file could not be parsed, or its checksum does not match its sidecar.
class FormatError : public Error {
   public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

/// Loaded data violates a structural invariant (AP found, greedy gap, ...).
class InvariantError : public Error {
   public:
    explicit InvariantError(const std::string& msg) : Error(msg) {}
};

class FitError : public Error {
   public:
    explicit FitError(const std::string& msg) : Error(msg) {}
};

}  // namespace stanley

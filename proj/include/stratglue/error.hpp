#pragma once

#include <stdexcept>
#include <string>

namespace stratglue {

// Base for every error raised by the library. Subclasses name the violated
// precondition so callers (and the CLI) can map them to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConnectivityError : public Error {
public:
    using Error::Error;
};

class StabilityError : public Error {
public:
    using Error::Error;
};

class EdgeError : public Error {
public:
    using Error::Error;
};

class PartitionError : public Error {
public:
    using Error::Error;
};

class OrderError : public Error {
public:
    using Error::Error;
};

class SupportError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class RegionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SewingError : public Error {
public:
    using Error::Error;
};

} // namespace stratglue

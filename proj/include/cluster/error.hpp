#pragma once

#include <stdexcept>
#include <string>

namespace cluster {

// Domain failures (exit status 1 at the command line).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or schema-violating input (exit status 2 at the command line).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FrameMismatch : public Error {
public:
    FrameMismatch() : Error("frame mismatch") {}
};

// Nonzero remainder in exact division: a cluster expansion that is not Laurent.
class LaurentViolation : public Error {
public:
    using Error::Error;
};

class NotPointed : public Error {
public:
    using Error::Error;
};

class Incompatible : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace cluster

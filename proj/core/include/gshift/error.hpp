#pragma once

#include <stdexcept>
#include <string>

namespace gshift {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured cap (ball size, enumeration count, cell count, wall clock) was hit.
class ResourceError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Two patterns disagree on a shared cell.
class ConflictError : public Error {
public:
    using Error::Error;
};

class OutOfShapeError : public Error {
public:
    using Error::Error;
};

// The chosen fill strategy could not extend a pattern.
class FillFailure : public Error {
public:
    using Error::Error;
};

// Some position agrees with one of its separation translates out to r_sep.
class AperiodicityWitnessNotFound : public Error {
public:
    using Error::Error;
};

// A value was requested outside the region where windowed results are final.
class SafeRegionError : public Error {
public:
    using Error::Error;
};

class StageLemmaViolation : public Error {
public:
    using Error::Error;
};

} // namespace gshift

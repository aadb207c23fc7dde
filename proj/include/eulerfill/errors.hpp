#pragma once

#include <stdexcept>
#include <string>

namespace eulerfill {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rings with fewer than three distinct vertices, all-collinear point sets, cells larger than the domain.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

/// Overlapping faces, T-junctions, malformed complex files.
class InvalidComplex : public Error {
public:
    using Error::Error;
};

class NotEulerReady : public Error {
public:
    using Error::Error;
};

/// The requested offset distance reaches a skeleton event of some face.
class OffsetChangesGeometry : public Error {
public:
    using Error::Error;
};

class NotEulerian : public Error {
public:
    using Error::Error;
};

/// A guarantee that upstream stages should have established does not hold.
class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace eulerfill

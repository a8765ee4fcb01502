#pragma once

#include <stdexcept>
#include <string>

namespace windrep {

// Base class for all library errors. The CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct DegenerateFacet : Error {
    using Error::Error;
};
struct EmptyMesh : Error {
    using Error::Error;
};
struct SizeMismatch : Error {
    using Error::Error;
};
struct NonOrientablePatch : Error {
    using Error::Error;
};
struct SingularEvaluation : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct ConflictingDivergence : Error {
    using Error::Error;
};
struct CoincidentBoundaries : Error {
    using Error::Error;
};
struct TooManyPatches : Error {
    using Error::Error;
};
struct TooCloseToSurface : Error {
    using Error::Error;
};
struct BadClampRange : Error {
    using Error::Error;
};

} // namespace windrep

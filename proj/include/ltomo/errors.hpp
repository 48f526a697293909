#pragma once

#include <stdexcept>
#include <string>

namespace ltomo {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDirection : Error {
    ZeroDirection() : Error("direction must be nonzero") {}
};

struct EmptySet : Error {
    EmptySet() : Error("set must be nonempty") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct DuplicatePoint : Error {
    explicit DuplicatePoint(const std::string& what) : Error(what) {}
};

struct DuplicateDirection : Error {
    DuplicateDirection() : Error("directions must be pairwise distinct") {}
};

struct NotConvex : Error {
    NotConvex() : Error("domain is not a convex lattice set") {}
};

struct NonzeroLineSums : Error {
    NonzeroLineSums() : Error("function does not have zero line sums") {}
};

struct ResidualNonzero : Error {
    ResidualNonzero() : Error("internal error: peeling left a nonzero residual") {}
};

struct WrongCornerSet : Error {
    explicit WrongCornerSet(const std::string& what) : Error(what) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& what = "singular linear system") : Error(what) {}
};

struct InconsistentTarget : Error {
    InconsistentTarget() : Error("target vector is not in the range of the matrix") {}
};

struct MissingLine : Error {
    explicit MissingLine(const std::string& what) : Error(what) {}
};

struct UnknownLine : Error {
    explicit UnknownLine(const std::string& what) : Error(what) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what) : Error(what) {}
};

struct DegreeTooSmall : Error {
    DegreeTooSmall() : Error("set family must have degree k >= 2") {}
};

struct NotCovering : Error {
    explicit NotCovering(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace ltomo

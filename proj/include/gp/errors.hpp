#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gp {

// Root of all library errors. Every failure mode gets its own type so
// callers can catch exactly what they can handle.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- ingest ---
struct MalformedRow : Error {
    std::size_t row;  // 1-based data-row index (header excluded)
    MalformedRow(std::size_t r, const std::string& what) : Error(what), row(r) {}
};
struct NonMonotoneTime : Error {
    std::size_t row;  // first offending data row
    NonMonotoneTime(std::size_t r, const std::string& what) : Error(what), row(r) {}
};
struct EmptyFile : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};
struct MissingFile : Error {
    using Error::Error;
};

// --- segment ---
struct NoStepsDetected : Error {
    using Error::Error;
};
struct TooFewSteps : Error {
    using Error::Error;
};

// --- reference ---
struct DegenerateInput : Error {
    using Error::Error;
};
struct EmptyStepList : Error {
    using Error::Error;
};

// --- dtw ---
struct EmptySeries : Error {
    using Error::Error;
};
struct InfeasibleWindow : Error {
    using Error::Error;
};

// --- stats ---
struct AllZeroDifferences : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct MissingSubjectValue : Error {
    using Error::Error;
};

// --- controller ---
struct OutOfRange : Error {
    using Error::Error;
};
struct ClockRegression : Error {
    using Error::Error;
};

// --- sim ---
struct CommandOutOfRange : Error {
    using Error::Error;
};

// --- cli / config ---
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace gp

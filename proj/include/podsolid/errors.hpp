#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace podsolid {

/// Root of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes that do not line up (column lengths, layout totals, grid sizes).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise invalid numbers in input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Caller passed an out-of-range argument (threshold, rank, config value).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed snapshot / CSV / config file.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
    explicit FormatError(const std::string& what) : Error(what), offset_(0) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Solver or decomposition failed to converge.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what, long iterations = -1, double residual = -1.0)
        : Error(what), iterations_(iterations), residual_(residual) {}

    long iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    long iterations_;
    double residual_;
};

/// Time step exceeds a stability limit (explicit heat scheme, advective CFL).
class StabilityError : public NumericalError {
public:
    StabilityError(const std::string& what, double limit)
        : NumericalError(what), limit_(limit) {}

    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

/// Spectrum with no positive entry where one is required.
class DegenerateSpectrumError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace podsolid

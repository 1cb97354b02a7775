#pragma once

#include <stdexcept>
#include <string>

namespace gsu {

enum class ErrorCode {
    InvalidArgument,
    Infeasible,
    CapExceeded,
    SizeLimitExceeded,
    DimensionMismatch,
    NotLumpable,
    VerificationFailed,
    NoConvergence,
    NotReversible,
    NonUniformPi,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace gsu

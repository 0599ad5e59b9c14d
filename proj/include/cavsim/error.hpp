#pragma once

#include <stdexcept>
#include <string>

namespace cavsim {

enum class ErrorCode {
    InvalidArgument,
    DegenerateDenominator,
    StepTooLarge,
    WindowTooShort,
    TooBroadband,
    RegisterCollision,
    RegisterMismatch,
    UnknownRegister,
    UnsupportedAngle,
    PathOccupied,
    ZeroNormState,
    ParseError,
    ValidationError,
    InvalidSpec,
    InvalidSampleCount,
};

const char* error_code_name(ErrorCode code);

// Every recoverable failure in the library is reported through this
// exception. `line`/`column` are 1-based and only set by the network parser;
// -1 means not applicable.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = -1, int column = -1);

    ErrorCode code() const { return code_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    ErrorCode code_;
    int line_;
    int column_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);
[[noreturn]] void fail_at(ErrorCode code, const std::string& message, int line, int column);

}

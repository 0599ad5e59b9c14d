#include "cavsim/error.hpp"

namespace cavsim {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::TooBroadband: return "TooBroadband";
        case ErrorCode::RegisterCollision: return "RegisterCollision";
        case ErrorCode::RegisterMismatch: return "RegisterMismatch";
        case ErrorCode::UnknownRegister: return "UnknownRegister";
        case ErrorCode::UnsupportedAngle: return "UnsupportedAngle";
        case ErrorCode::PathOccupied: return "PathOccupied";
        case ErrorCode::ZeroNormState: return "ZeroNormState";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    }
    return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code), line_(line), column_(column) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

void fail_at(ErrorCode code, const std::string& message, int line, int column) {
    throw Error(code, message, line, column);
}

}

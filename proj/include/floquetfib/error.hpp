#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floquetfib {

enum class ErrorCode {
    BackendMismatch,
    DivisionByZero,
    NanProduced,
    ParityMismatch,
    IndexOutOfRange,
    InvalidArgument,
    PreconditionViolated,
    SingularJ,
    ParseError,
};

constexpr std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::BackendMismatch: return "BackendMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NanProduced: return "NanProduced";
        case ErrorCode::ParityMismatch: return "ParityMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::SingularJ: return "SingularJ";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` carries the error kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace floquetfib

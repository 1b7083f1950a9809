#ifndef HYPERROB_ERROR_HPP
#define HYPERROB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyperrob {

enum class ErrorCode {
    OutOfRangeId = 1,
    OutOfRangeIndex,
    EdgeTooSmall,
    NotABijection,
    InvalidConfig,
    DisconnectedRetryExceeded,
    InvalidOrder,
    ShapeMismatch,
    ParseError,
    IoError,
    EmptyDataset,
    InvalidArgument,
};

constexpr const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfRangeId: return "OutOfRangeId";
        case ErrorCode::OutOfRangeIndex: return "OutOfRangeIndex";
        case ErrorCode::EdgeTooSmall: return "EdgeTooSmall";
        case ErrorCode::NotABijection: return "NotABijection";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::DisconnectedRetryExceeded: return "DisconnectedRetryExceeded";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying a stable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace hyperrob

#endif // HYPERROB_ERROR_HPP

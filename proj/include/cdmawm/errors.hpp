#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdmawm {

enum class ErrorKind {
    OddDimensions,
    PlaneTooSmall,
    ShapeMismatch,
    LengthMismatch,
    DimensionMismatch,
    KeyOutOfRange,
    WatermarkTooLarge,
    AllZeroReference,
    CodecFailure,
    InvalidArgument,
    IoFailure,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::OddDimensions: return "OddDimensions";
    case ErrorKind::PlaneTooSmall: return "PlaneTooSmall";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::KeyOutOfRange: return "KeyOutOfRange";
    case ErrorKind::WatermarkTooLarge: return "WatermarkTooLarge";
    case ErrorKind::AllZeroReference: return "AllZeroReference";
    case ErrorKind::CodecFailure: return "CodecFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cdmawm

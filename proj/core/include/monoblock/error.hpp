#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monoblock {

/// Failure categories raised by the library
enum class ErrorCode {
    InvalidArgument,
    OutOfRange,
    NonFinite,
    DominanceViolation,
    NotConverged,
    SandwichViolation,
    ConstructionRefused,
    Singular,
    Divergence,
    DimensionMismatch,
    Io,
    Config,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying an ErrorCode alongside the message
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace monoblock

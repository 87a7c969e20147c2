#include "monoblock/error.hpp"

namespace monoblock {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::OutOfRange: return "out_of_range";
        case ErrorCode::NonFinite: return "non_finite";
        case ErrorCode::DominanceViolation: return "dominance_violation";
        case ErrorCode::NotConverged: return "not_converged";
        case ErrorCode::SandwichViolation: return "sandwich_violation";
        case ErrorCode::ConstructionRefused: return "construction_refused";
        case ErrorCode::Singular: return "singular";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::Io: return "io";
        case ErrorCode::Config: return "config";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace monoblock

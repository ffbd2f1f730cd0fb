#include "fraclab/error.hpp"

#include <utility>

namespace fraclab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::non_positive_scale: return "NonPositiveScale";
        case ErrorCode::incompatible_norm: return "IncompatibleNorm";
        case ErrorCode::origin_point: return "OriginPoint";
        case ErrorCode::empty_domain: return "EmptyDomain";
        case ErrorCode::non_integrable_profile: return "NonIntegrableProfile";
        case ErrorCode::non_integrable_weight: return "NonIntegrableWeight";
        case ErrorCode::non_integrable_kernel: return "NonIntegrableKernel";
        case ErrorCode::support_violation: return "SupportViolation";
        case ErrorCode::not_converged: return "NotConverged";
        case ErrorCode::zero_function: return "ZeroFunction";
        case ErrorCode::not_a_fixed_point: return "NotAFixedPoint";
        case ErrorCode::inadmissible_params: return "InadmissibleParams";
        case ErrorCode::negative_weight: return "NegativeWeight";
        case ErrorCode::zero_weight: return "ZeroWeight";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

ParseError::ParseError(std::string key, std::string reason)
    : Error(ErrorCode::parse_error, key + ": " + reason), key_(std::move(key)), reason_(std::move(reason)) {}

}  // namespace fraclab

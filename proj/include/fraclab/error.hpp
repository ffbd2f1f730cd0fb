#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fraclab {

enum class ErrorCode {
    dimension_mismatch,
    non_positive_scale,
    incompatible_norm,
    origin_point,
    empty_domain,
    non_integrable_profile,
    non_integrable_weight,
    non_integrable_kernel,
    support_violation,
    not_converged,
    zero_function,
    not_a_fixed_point,
    inadmissible_params,
    negative_weight,
    zero_weight,
    parse_error,
    io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// The description without the code prefix that what() carries.
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

/// Config parse failure; carries the offending key.
class ParseError : public Error {
public:
    ParseError(std::string key, std::string reason);

    [[nodiscard]] const std::string& key() const noexcept { return key_; }
    [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

private:
    std::string key_;
    std::string reason_;
};

}  // namespace fraclab

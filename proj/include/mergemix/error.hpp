#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mergemix {

enum class ErrorCode {
    ParseError,
    Unbalanced,
    NonPositiveValue,
    DimensionMismatch,
    DuplicateNode,
    MonotonicityViolation,
    NonPositiveReward,
    OutOfDomain,
    Infeasible,
    TooLarge,
    OddSum,
    BaseCaseFails,
    InvalidPmf,
    SybilCollision,
    InvalidConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mergemix

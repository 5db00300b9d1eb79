#pragma once

#include <stdexcept>
#include <string>

namespace tforge {

enum class ErrorCode {
    DimensionMismatch,
    ModulusMismatch,
    NotPrime,
    Parse,
    Io,
    MalformedGroup,
    AxiomViolation,
    Unsupported,
    NotInvertible,
    RankDeficiency,
    NotIdempotent,
    NotIdeal,
    Internal,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a code and a stage tag.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), code_(code), stage_(stage) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorCode code_;
    std::string stage_;
};

}  // namespace tforge

#pragma once

#include <stdexcept>
#include <string>

namespace oss {

// Every failure the library can raise, so callers (CLI, bindings, tests) can
// branch on the condition instead of parsing message text.
enum class ErrorCode {
    OverlappingAlphabets,
    ZeroInAlphabet,
    NonPowerOfTwoAlphabet,
    SparsityExceedsPool,
    NonOrthonormalDictionary,
    HadamardOrderInvalid,
    DimensionMismatch,
    RankOutOfRange,
    InvalidSubset,
    BitLengthMismatch,
    UnsupportedSpecShape,
    UnsupportedN,
    CodebookTooLarge,
    AnalyticUnavailable,
    QuadratureNonConvergence,
    DomainError,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace oss

#include "oss/errors.hpp"

namespace oss {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OverlappingAlphabets: return "OverlappingAlphabets";
        case ErrorCode::ZeroInAlphabet: return "ZeroInAlphabet";
        case ErrorCode::NonPowerOfTwoAlphabet: return "NonPowerOfTwoAlphabet";
        case ErrorCode::SparsityExceedsPool: return "SparsityExceedsPool";
        case ErrorCode::NonOrthonormalDictionary: return "NonOrthonormalDictionary";
        case ErrorCode::HadamardOrderInvalid: return "HadamardOrderInvalid";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::InvalidSubset: return "InvalidSubset";
        case ErrorCode::BitLengthMismatch: return "BitLengthMismatch";
        case ErrorCode::UnsupportedSpecShape: return "UnsupportedSpecShape";
        case ErrorCode::UnsupportedN: return "UnsupportedN";
        case ErrorCode::CodebookTooLarge: return "CodebookTooLarge";
        case ErrorCode::AnalyticUnavailable: return "AnalyticUnavailable";
        case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace oss

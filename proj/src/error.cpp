#include "pretestkit/error.hpp"

namespace pretestkit {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::DuplicateQuestionId: return "DuplicateQuestionId";
        case ErrorCode::DuplicateCategoryLabel: return "DuplicateCategoryLabel";
        case ErrorCode::EmptyStem: return "EmptyStem";
        case ErrorCode::LexiconUnavailable: return "LexiconUnavailable";
        case ErrorCode::MissingAim: return "MissingAim";
        case ErrorCode::MissingPopulation: return "MissingPopulation";
        case ErrorCode::EmptyProfile: return "EmptyProfile";
        case ErrorCode::AuthMissing: return "AuthMissing";
        case ErrorCode::NetworkFailure: return "NetworkFailure";
        case ErrorCode::RateLimited: return "RateLimited";
        case ErrorCode::TranscriptMiss: return "TranscriptMiss";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace pretestkit

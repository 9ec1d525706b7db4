#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pretestkit {

enum class ErrorCode {
    MalformedDocument,
    DuplicateQuestionId,
    DuplicateCategoryLabel,
    EmptyStem,
    LexiconUnavailable,
    MissingAim,
    MissingPopulation,
    EmptyProfile,
    AuthMissing,
    NetworkFailure,
    RateLimited,
    TranscriptMiss,
    IoError,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and the offending location
/// (question id, category index, byte offset, file path — whatever pins it down).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string location = {})
        : std::runtime_error(location.empty() ? message : message + " (" + location + ")"),
          code_(code),
          location_(std::move(location)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::string location_;
};

}  // namespace pretestkit

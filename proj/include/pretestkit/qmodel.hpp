#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pretestkit::qmodel {

enum class SurveyMode { SelfAdministeredWeb, FaceToFace, Telephone, Paper, Unspecified };

enum class QuestionKind { ClosedFrequency, ClosedAgreement, Open, Other };

const char* to_string(SurveyMode mode);
const char* to_string(QuestionKind kind);
SurveyMode survey_mode_from_string(const std::string& s);
QuestionKind question_kind_from_string(const std::string& s);

struct StudyMeta {
    std::optional<std::string> aim;
    SurveyMode mode = SurveyMode::Unspecified;
    std::optional<std::string> population;

    bool operator==(const StudyMeta&) const = default;
};

struct Question {
    std::string id;
    std::string stem;
    QuestionKind kind = QuestionKind::Other;
    std::vector<std::string> categories;

    bool operator==(const Question&) const = default;
};

struct Questionnaire {
    StudyMeta meta;
    std::vector<Question> questions;

    bool operator==(const Questionnaire&) const = default;

    const Question* find(const std::string& id) const;
};

/// Where a finding points: the stem or one response category of a question.
struct SourceSpan {
    enum class Target { Stem, Category };
    Target target = Target::Stem;
    std::size_t category_index = 0;  // meaningful for Target::Category
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive

    bool operator==(const SourceSpan&) const = default;
};

enum class StructuralIssueCode {
    AimMissing,
    PopulationMissing,
    ClosedTooFewCategories,
    OpenWithCategories,
};

struct StructuralIssue {
    StructuralIssueCode code;
    std::string question_id;  // empty for meta-level issues
    std::string message;

    bool operator==(const StructuralIssue&) const = default;
};

/// Parses the questionnaire document format (strict JSON object; unknown
/// fields rejected). Throws Error with codes MalformedDocument,
/// DuplicateQuestionId, DuplicateCategoryLabel or EmptyStem.
Questionnaire parse_questionnaire(const std::string& document);

/// Inverse of parse_questionnaire: parse(serialize(q)) == q.
std::string serialize_questionnaire(const Questionnaire& q);

/// Non-failing checks: prompt-context fields missing for higher levels,
/// closed questions with too few categories, open questions with categories.
std::vector<StructuralIssue> validate_structure(const Questionnaire& q);

Questionnaire load_questionnaire_file(const std::string& path);

}  // namespace pretestkit::qmodel

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pretestkit/compare.hpp"
#include "pretestkit/feedback.hpp"
#include "pretestkit/lint.hpp"
#include "pretestkit/prompt.hpp"
#include "pretestkit/qmodel.hpp"

namespace pretestkit::report {

struct QuestionRecord {
    std::string question_id;
    std::vector<lint::Finding> findings;
    std::vector<prompt::PromptSpec> prompts;
    std::vector<feedback::PretestFeedback> feedbacks;
    std::vector<compare::RevisionDiff> diffs;
    std::optional<compare::AgreementReport> agreement;
    std::vector<compare::JudgmentItem> judgments;
};

/// One pretest run over a questionnaire: everything needed to reproduce and
/// audit it offline. `generated_at` lives in the envelope, not the canonical
/// body, so equal inputs render byte-equal run sections.
struct PretestRun {
    std::string run_id;
    std::string tool_version;
    std::string generated_at;
    qmodel::Questionnaire questionnaire;
    std::vector<QuestionRecord> records;
    std::vector<std::string> transcript_digests;
};

/// Canonical JSON (sorted keys, integers only); parse_run(render_json(r))
/// reconstructs r.
std::string render_json(const PretestRun& run);

PretestRun parse_run(const std::string& json_text);
PretestRun load_run_file(const std::string& path);

std::string render_markdown(const PretestRun& run);

/// Standalone findings document for `lint --format json`.
std::string render_findings_json(
    const std::vector<std::pair<std::string, std::vector<lint::Finding>>>& per_question);

/// Write-then-rename so interrupted runs never leave partial files.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace pretestkit::report

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pretestkit/feedback.hpp"
#include "pretestkit/lint.hpp"

namespace pretestkit::compare {

enum class EditKind { Replace, Insert, Delete };
enum class EditSemantic {
    TermReplacement,
    TimeframeChange,
    ExemplificationAdded,
    CategoryChange,
    Rewording,
};

const char* to_string(EditKind kind);
const char* to_string(EditSemantic semantic);

/// One merged run of non-matching tokens. Token indices refer to the
/// normalized (case-folded, punctuation-stripped) token sequences.
struct EditOp {
    EditKind kind = EditKind::Replace;
    std::vector<std::string> old_tokens;  // empty for Insert
    std::vector<std::string> new_tokens;  // empty for Delete
    std::size_t old_start = 0;
    std::size_t old_end = 0;  // == old_start for Insert
    std::size_t new_start = 0;
    std::size_t new_end = 0;  // == new_start for Delete
    EditSemantic semantic = EditSemantic::Rewording;

    bool operator==(const EditOp&) const = default;
};

struct RevisionDiff {
    std::string original;
    std::string revised;
    std::vector<std::string> original_tokens;
    std::vector<std::string> revised_tokens;
    std::vector<EditOp> edits;
};

/// Token-level longest-common-subsequence diff with adjacent non-matches
/// merged, classified by what the edit does to the question.
RevisionDiff diff_revision(const std::string& original, const std::string& revised);

/// Category lists diff with labels as atomic units; every op is CategoryChange.
RevisionDiff diff_categories(const std::vector<std::string>& original,
                             const std::vector<std::string>& revised);

/// Replays the edits over the normalized original; equals `revised_tokens`
/// for any input pair (the diff soundness invariant).
std::vector<std::string> apply_edits(const RevisionDiff& diff);

struct MatchedEdit {
    EditOp ai;
    EditOp expert;

    bool operator==(const MatchedEdit&) const = default;
};

/// AI and expert edits matched by overlapping old-text span plus equal
/// semantic class; every edit lands in exactly one bucket.
struct AgreementReport {
    std::vector<MatchedEdit> shared;
    std::vector<EditOp> ai_only;
    std::vector<EditOp> expert_only;
};

AgreementReport compare_proposals(const std::string& original, const std::string& ai,
                                  const std::string& expert);

enum class JudgmentStatus { ConfirmedByLint, UnsupportedByLint, MissedByAI };

const char* to_string(JudgmentStatus status);

struct JudgmentItem {
    JudgmentStatus status;
    std::optional<std::size_t> suggestion_index;  // 1-based, from PretestFeedback
    std::vector<std::size_t> finding_indices;     // 0-based into the findings list
    std::string note;

    bool operator==(const JudgmentItem&) const = default;
};

/// finding-key ("L3", "RTF", "N10/Overlap", ...) -> suggestion kinds that
/// would count as the AI addressing it.
struct KindMapping {
    std::vector<std::pair<std::string, feedback::SuggestionKind>> entries;

    static const KindMapping& builtin();
    static KindMapping load(const std::filesystem::path& file);

    bool maps(const std::string& finding_key, feedback::SuggestionKind kind) const;
    bool has_key(const std::string& finding_key) const;
};

std::string finding_key(const lint::Finding& f);

/// Adjudicates AI suggestions against deterministic findings: mapped pairs
/// are confirmed, unmatched suggestions go to the researcher queue, and
/// mapped-kind findings nobody addressed are flagged as missed.
std::vector<JudgmentItem> cross_check(const std::vector<lint::Finding>& findings,
                                      const feedback::PretestFeedback& fb,
                                      const KindMapping& mapping = KindMapping::builtin());

}  // namespace pretestkit::compare

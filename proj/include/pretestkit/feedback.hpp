#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pretestkit::feedback {

enum class SuggestionKind {
    ClarifyTerm,
    AddExamples,
    ReviseCategories,
    MutualExclusivity,
    AddTimeframe,
    SpecifyLocation,
    NeutralTone,
    SimplifyWording,
    AddScale,
    Other,
};

const char* to_string(SuggestionKind kind);
std::optional<SuggestionKind> suggestion_kind_from_string(const std::string& s);

struct Suggestion {
    std::size_t index = 0;  // 1-based source order
    std::optional<std::string> title;
    std::string body;
    SuggestionKind kind = SuggestionKind::Other;
    // Byte range of this suggestion in the raw response, numbering included.
    std::size_t span_start = 0;
    std::size_t span_end = 0;

    bool operator==(const Suggestion&) const = default;
};

struct PretestFeedback {
    std::vector<Suggestion> suggestions;
    std::optional<std::string> revised_stem;
    std::optional<std::vector<std::string>> revised_categories;
    std::string raw;  // byte-exact original
    std::optional<std::pair<std::size_t, std::size_t>> revision_span;  // in raw

    bool operator==(const PretestFeedback&) const = default;
};

/// Ordered first-match keyword families. Match order is the only knob that
/// changes classification outcomes.
struct KeywordTable {
    std::vector<std::pair<SuggestionKind, std::vector<std::string>>> families;

    static const KeywordTable& builtin();
    static KeywordTable load(const std::filesystem::path& file);
};

SuggestionKind classify_suggestion(const std::optional<std::string>& title,
                                   const std::string& body,
                                   const KeywordTable& table = KeywordTable::builtin());

/// Splits numbered "N. Title: body" items, pulls out a revised question from
/// "Improved version:" style segments or a trailing quoted interrogative, and
/// collects dash-bulleted category lists. Never fails: unstructured text
/// becomes a single Other suggestion.
PretestFeedback parse_feedback(const std::string& raw,
                               const KeywordTable& table = KeywordTable::builtin());

}  // namespace pretestkit::feedback

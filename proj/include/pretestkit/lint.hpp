#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pretestkit/qmodel.hpp"
#include "pretestkit/scale.hpp"

namespace pretestkit::lint {

enum class RuleId {
    L1LowFrequencyWord,
    L2VagueRelativeTerm,
    L3VagueNounPhrase,
    L4ComplexSyntax,
    L5ComplexLogicalStructure,
    L6Nominalization,
    L7BridgingInference,
    N1JargonOrAbbreviation,
    N3EmotionalOrPrestige,
    N4DoubleBarreled,
    N5Leading,
    N6BeyondCapability,
    N7FalsePremise,
    N8FutureIntention,
    N9DoubleNegative,
    N10CategoryScale,
    RTFMissingTimeframe,
};

const char* to_string(RuleId id);
std::optional<RuleId> rule_from_string(const std::string& s);
std::vector<RuleId> all_rules();

enum class Severity { Error, Warning, Info };

const char* to_string(Severity s);

struct Finding {
    RuleId rule;
    Severity severity = Severity::Warning;
    qmodel::SourceSpan span;
    std::string message;
    std::vector<std::string> evidence;       // matched raw tokens
    std::optional<std::string> subkind;      // scale finding kind for N10
    std::optional<std::string> hint;         // suggestion-kind tag

    bool operator==(const Finding&) const = default;
};

struct LintConfig {
    std::size_t frequency_rank_threshold = 5000;
    std::size_t top_rank_never_flagged = 200;
    std::size_t max_sentence_tokens = 30;
    std::size_t min_subordinators = 3;
    std::size_t min_coordinators = 3;
    std::filesystem::path lexicon_dir = "lexicons";
    std::map<RuleId, bool> enabled;  // absent = enabled
    bool strict = false;
    int weeks_per_month = 4;

    bool rule_enabled(RuleId id) const;
};

/// Immutable after load; loading a missing file throws LexiconUnavailable.
struct Lexicons {
    std::unordered_map<std::string, std::size_t> frequency;  // word -> rank
    std::unordered_set<std::string> stopwords;
    std::unordered_set<std::string> vague_terms;
    std::unordered_set<std::string> broad_nouns;
    std::unordered_set<std::string> nominalization_exceptions;
    std::vector<std::string> leading_phrases;
    std::vector<std::string> emotional_terms;
    scale::PolarityLexicon polarity;

    static Lexicons load(const std::filesystem::path& dir);
};

struct Context {
    LintConfig config;
    Lexicons lexicons;

    static Context load(LintConfig cfg);
};

/// Per-sentence counts from the syntactic complexity pass.
struct SentenceProfile {
    std::size_t tokens = 0;
    std::size_t subordinators = 0;
    std::size_t coordinators = 0;
};

struct ComplexityProfile {
    std::vector<SentenceProfile> sentences;
};

// Individual rules. Each returns only its own findings; spans index `stem`.
std::vector<Finding> detect_low_frequency_terms(const std::string& stem, const Context& ctx);
std::vector<Finding> detect_vague_terms(const std::string& stem, const Context& ctx);
std::vector<Finding> detect_vague_noun_phrases(const std::string& stem, const Context& ctx);
ComplexityProfile measure_syntactic_complexity(const std::string& stem, const Context& ctx,
                                               std::vector<Finding>* findings);
std::vector<Finding> detect_nominalizations(const std::string& stem, const Context& ctx);
std::vector<Finding> detect_form_flaws(const std::string& stem, const Context& ctx);
std::vector<Finding> detect_missing_timeframe(const std::string& stem, const Context& ctx);
std::vector<Finding> detect_bridging_inference(const std::string& stem, const Context& ctx);

/// Runs every enabled rule plus the category-scale analysis (N10) and returns
/// findings sorted by (target, span start, rule id).
std::vector<Finding> lint_question(const qmodel::Question& q, const qmodel::StudyMeta& meta,
                                   const Context& ctx);

/// Stable one-line rendering used for determinism checks and CLI text output.
std::string format_finding(const Finding& f);

}  // namespace pretestkit::lint

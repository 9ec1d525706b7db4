#include "pretestkit/lint.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pretestkit/error.hpp"
#include "pretestkit/lexicon.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::lint {

using text::Sentence;
using text::Token;

const char* to_string(RuleId id) {
    switch (id) {
        case RuleId::L1LowFrequencyWord: return "L1";
        case RuleId::L2VagueRelativeTerm: return "L2";
        case RuleId::L3VagueNounPhrase: return "L3";
        case RuleId::L4ComplexSyntax: return "L4";
        case RuleId::L5ComplexLogicalStructure: return "L5";
        case RuleId::L6Nominalization: return "L6";
        case RuleId::L7BridgingInference: return "L7";
        case RuleId::N1JargonOrAbbreviation: return "N1";
        case RuleId::N3EmotionalOrPrestige: return "N3";
        case RuleId::N4DoubleBarreled: return "N4";
        case RuleId::N5Leading: return "N5";
        case RuleId::N6BeyondCapability: return "N6";
        case RuleId::N7FalsePremise: return "N7";
        case RuleId::N8FutureIntention: return "N8";
        case RuleId::N9DoubleNegative: return "N9";
        case RuleId::N10CategoryScale: return "N10";
        case RuleId::RTFMissingTimeframe: return "RTF";
    }
    return "?";
}

std::optional<RuleId> rule_from_string(const std::string& s) {
    for (RuleId id : all_rules())
        if (s == to_string(id)) return id;
    return std::nullopt;
}

std::vector<RuleId> all_rules() {
    return {RuleId::L1LowFrequencyWord,  RuleId::L2VagueRelativeTerm,
            RuleId::L3VagueNounPhrase,   RuleId::L4ComplexSyntax,
            RuleId::L5ComplexLogicalStructure, RuleId::L6Nominalization,
            RuleId::L7BridgingInference, RuleId::N1JargonOrAbbreviation,
            RuleId::N3EmotionalOrPrestige, RuleId::N4DoubleBarreled,
            RuleId::N5Leading,           RuleId::N6BeyondCapability,
            RuleId::N7FalsePremise,      RuleId::N8FutureIntention,
            RuleId::N9DoubleNegative,    RuleId::N10CategoryScale,
            RuleId::RTFMissingTimeframe};
}

const char* to_string(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "?";
}

bool LintConfig::rule_enabled(RuleId id) const {
    auto it = enabled.find(id);
    return it == enabled.end() || it->second;
}

Lexicons Lexicons::load(const std::filesystem::path& dir) {
    Lexicons lex;
    lex.frequency = lexicon::load_ranked(dir / "frequency.txt");
    lex.stopwords = lexicon::load_set(dir / "stopwords.txt");
    lex.vague_terms = lexicon::load_set(dir / "vague_terms.txt");
    lex.broad_nouns = lexicon::load_set(dir / "broad_nouns.txt");
    lex.nominalization_exceptions = lexicon::load_set(dir / "nominalization_exceptions.txt");
    lex.leading_phrases = lexicon::load_entries(dir / "leading_phrases.txt");
    lex.emotional_terms = lexicon::load_entries(dir / "emotional_terms.txt");
    lex.polarity = scale::PolarityLexicon::load(dir);
    return lex;
}

Context Context::load(LintConfig cfg) {
    Lexicons lex = Lexicons::load(cfg.lexicon_dir);
    return Context{std::move(cfg), std::move(lex)};
}

namespace {

const std::array<const char*, 17> kSubordinators = {
    "if", "that", "when", "because", "although", "while", "whereas", "who", "whom",
    "which", "whose", "unless", "since", "after", "before", "until", "whether"};

bool is_subordinator(const std::string& tok) {
    return std::find(kSubordinators.begin(), kSubordinators.end(), tok) != kSubordinators.end();
}

bool is_alpha_token(const Token& t) {
    return !t.folded.empty() &&
           std::all_of(t.folded.begin(), t.folded.end(),
                       [](unsigned char c) { return std::isalpha(c) || c == '\''; });
}

bool is_negation(const std::string& tok) {
    static const std::array<const char*, 8> negs = {"not", "no", "never", "nothing",
                                                    "nobody", "none", "neither", "nor"};
    if (std::find(negs.begin(), negs.end(), tok) != negs.end()) return true;
    return tok.size() > 3 && tok.ends_with("n't");
}

bool is_determiner(const std::string& tok) {
    static const std::array<const char*, 11> dets = {"the",  "your", "their", "this", "these",
                                                     "those", "his",  "her",   "its",  "my", "our"};
    return std::find(dets.begin(), dets.end(), tok) != dets.end();
}

Finding make_finding(RuleId rule, Severity sev, std::size_t start, std::size_t end,
                     std::string message, std::vector<std::string> evidence,
                     std::optional<std::string> hint = std::nullopt) {
    Finding f;
    f.rule = rule;
    f.severity = sev;
    f.span = {qmodel::SourceSpan::Target::Stem, 0, start, end};
    f.message = std::move(message);
    f.evidence = std::move(evidence);
    f.hint = std::move(hint);
    return f;
}

// True when the text right after `end` exemplifies the phrase: "such as ...",
// "e.g. ...", "for example ..." (optionally inside a parenthesis), or a
// parenthetical list with at least two commas.
bool exemplified_after(const std::string& stem, std::size_t end) {
    std::size_t i = end;
    while (i < stem.size() && std::isspace(static_cast<unsigned char>(stem[i]))) ++i;
    bool paren = i < stem.size() && stem[i] == '(';
    std::size_t content = paren ? i + 1 : i;
    std::string folded = text::fold(stem.substr(content, 16));
    if (folded.starts_with("such as") || folded.starts_with("e.g") ||
        folded.starts_with("for example"))
        return true;
    if (paren) {
        std::size_t close = stem.find(')', i);
        if (close != std::string::npos) {
            auto commas = std::count(stem.begin() + static_cast<long>(i),
                                     stem.begin() + static_cast<long>(close), ',');
            if (commas >= 2) return true;
        }
    }
    return false;
}

// Period-anchor scan shared by RTF and N6: "last/past/next [N] <unit>",
// "typical <unit>", "per/each/every <unit>", "a/this <unit>" after "typical".
struct PeriodMention {
    bool present = false;
    long months = 0;  // rough magnitude for N6 (0 when unknown)
};

bool is_period_unit(const std::string& tok) {
    static const std::array<const char*, 8> units = {"day",   "days",   "week", "weeks",
                                                     "month", "months", "year", "years"};
    return std::find(units.begin(), units.end(), tok) != units.end();
}

PeriodMention find_reference_period(const std::vector<Token>& toks) {
    PeriodMention m;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const std::string& t = toks[i].folded;
        if (t == "last" || t == "past" || t == "next") {
            std::size_t j = i + 1;
            long n = 1;
            if (j < toks.size() &&
                std::all_of(toks[j].folded.begin(), toks[j].folded.end(),
                            [](unsigned char c) { return std::isdigit(c); })) {
                n = std::stol(toks[j].folded);
                ++j;
            }
            if (j < toks.size() && is_period_unit(toks[j].folded)) {
                m.present = true;
                const std::string& unit = toks[j].folded;
                if (unit.starts_with("year")) m.months = std::max(m.months, n * 12);
                if (unit.starts_with("month")) m.months = std::max(m.months, n);
                continue;
            }
        }
        if ((t == "typical" || t == "per" || t == "each" || t == "every") && i + 1 < toks.size() &&
            is_period_unit(toks[i + 1].folded)) {
            m.present = true;
        }
    }
    return m;
}

}  // namespace

std::vector<Finding> detect_low_frequency_terms(const std::string& stem, const Context& ctx) {
    std::vector<Finding> findings;
    const auto& lex = ctx.lexicons;
    auto toks = text::tokenize(stem);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (!is_alpha_token(t) || t.folded.size() < 2) continue;
        if (lex.stopwords.count(t.folded)) continue;
        if (t.all_caps()) {
            if (!exemplified_after(stem, t.end)) {
                std::size_t k = t.end;
                while (k < stem.size() && std::isspace(static_cast<unsigned char>(stem[k]))) ++k;
                if (k >= stem.size() || stem[k] != '(') {
                    findings.push_back(make_finding(
                        RuleId::N1JargonOrAbbreviation, Severity::Warning, t.start, t.end,
                        "abbreviation \"" + t.raw + "\" is not spelled out", {t.raw},
                        "ClarifyTerm"));
                }
            }
            continue;
        }
        auto it = lex.frequency.find(t.folded);
        if (it != lex.frequency.end() && it->second <= ctx.config.top_rank_never_flagged) continue;
        bool rare = it == lex.frequency.end() || it->second > ctx.config.frequency_rank_threshold;
        if (rare) {
            std::string why = it == lex.frequency.end()
                                  ? "not in the frequency list"
                                  : "rank " + std::to_string(it->second) + " above threshold";
            findings.push_back(make_finding(RuleId::L1LowFrequencyWord, Severity::Warning, t.start,
                                            t.end,
                                            "\"" + t.raw + "\" may be unfamiliar (" + why + ")",
                                            {t.raw}, "ClarifyTerm"));
        }
    }
    return findings;
}

std::vector<Finding> detect_vague_terms(const std::string& stem, const Context& ctx) {
    std::vector<Finding> findings;
    for (const Sentence& sent : text::split_sentences(stem)) {
        for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
            const Token& t = sent.tokens[i];
            if (!ctx.lexicons.vague_terms.count(t.folded)) continue;
            // "how often", "how many", ... are measurement frames, not vagueness.
            if (i > 0 && sent.tokens[i - 1].folded == "how") continue;
            Severity sev = sent.interrogative ? Severity::Warning : Severity::Info;
            findings.push_back(make_finding(RuleId::L2VagueRelativeTerm, sev, t.start, t.end,
                                            "\"" + t.raw + "\" has no fixed meaning; anchor it",
                                            {t.raw}, "ClarifyTerm"));
        }
    }
    return findings;
}

std::vector<Finding> detect_vague_noun_phrases(const std::string& stem, const Context& ctx) {
    std::vector<Finding> findings;
    auto toks = text::tokenize(stem);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const Token& head = toks[i];
        if (!ctx.lexicons.broad_nouns.count(head.folded)) continue;
        std::size_t start = head.start;
        std::vector<std::string> evidence;
        if (i > 0 && is_alpha_token(toks[i - 1]) && !ctx.lexicons.stopwords.count(toks[i - 1].folded) &&
            !ctx.lexicons.broad_nouns.count(toks[i - 1].folded)) {
            start = toks[i - 1].start;
            evidence.push_back(toks[i - 1].raw);
        }
        evidence.push_back(head.raw);
        std::string phrase = stem.substr(start, head.end - start);
        if (exemplified_after(stem, head.end)) {
            findings.push_back(make_finding(RuleId::L3VagueNounPhrase, Severity::Info, start,
                                            head.end,
                                            "\"" + phrase + "\" is broad (examples given)",
                                            evidence));
        } else {
            findings.push_back(make_finding(
                RuleId::L3VagueNounPhrase, Severity::Warning, start, head.end,
                "\"" + phrase + "\" is broad; say what counts", evidence, "AddExamples"));
        }
    }
    return findings;
}

ComplexityProfile measure_syntactic_complexity(const std::string& stem, const Context& ctx,
                                               std::vector<Finding>* findings) {
    ComplexityProfile profile;
    for (const Sentence& sent : text::split_sentences(stem)) {
        SentenceProfile sp;
        std::vector<std::string> subs, coords;
        for (const Token& t : sent.tokens) {
            ++sp.tokens;
            if (is_subordinator(t.folded)) {
                ++sp.subordinators;
                subs.push_back(t.raw);
            }
            if (t.folded == "or" || t.folded == "and") {
                ++sp.coordinators;
                coords.push_back(t.raw);
            }
        }
        if (findings) {
            if (sp.tokens > ctx.config.max_sentence_tokens ||
                sp.subordinators >= ctx.config.min_subordinators) {
                std::ostringstream msg;
                msg << "sentence has " << sp.tokens << " words and " << sp.subordinators
                    << " subordinate clause marker(s)";
                findings->push_back(make_finding(RuleId::L4ComplexSyntax, Severity::Warning,
                                                 sent.start, sent.end, msg.str(), subs,
                                                 "SimplifyWording"));
            }
            if (sp.coordinators >= ctx.config.min_coordinators) {
                std::ostringstream msg;
                msg << "sentence coordinates " << sp.coordinators << " alternatives/conjuncts";
                findings->push_back(make_finding(RuleId::L5ComplexLogicalStructure,
                                                 Severity::Warning, sent.start, sent.end,
                                                 msg.str(), coords, "SimplifyWording"));
            }
        }
        profile.sentences.push_back(sp);
    }
    return profile;
}

std::vector<Finding> detect_nominalizations(const std::string& stem, const Context& ctx) {
    static const std::array<const char*, 7> suffixes = {"tion", "sion", "ment", "ity",
                                                        "ness", "ance", "ence"};
    std::vector<Finding> findings;
    for (const Token& t : text::tokenize(stem)) {
        if (!is_alpha_token(t) || t.all_caps()) continue;
        if (ctx.lexicons.nominalization_exceptions.count(t.folded)) continue;
        for (const char* sfx : suffixes) {
            std::size_t len = std::string_view(sfx).size();
            if (t.folded.size() >= len + 4 && t.folded.ends_with(sfx)) {
                findings.push_back(make_finding(
                    RuleId::L6Nominalization, Severity::Warning, t.start, t.end,
                    "\"" + t.raw + "\" packs an action into a noun; prefer the verb form",
                    {t.raw}, "SimplifyWording"));
                break;
            }
        }
    }
    return findings;
}

std::vector<Finding> detect_form_flaws(const std::string& stem, const Context& ctx) {
    std::vector<Finding> findings;
    auto sentences = text::split_sentences(stem);
    auto all_toks = text::tokenize(stem);

    // N4: one interrogative clause asking about two determiner phrases at once.
    for (const Sentence& sent : sentences) {
        if (!sent.interrogative) continue;
        // Work on a copy with parenthetical asides blanked out.
        std::string blanked(stem.substr(sent.start, sent.end - sent.start));
        std::size_t depth = 0;
        for (char& c : blanked) {
            if (c == '(') ++depth;
            bool inside = depth > 0;
            if (c == ')' && depth > 0) --depth;
            if (inside) c = ' ';
        }
        auto toks = text::tokenize(blanked);
        for (std::size_t a = 0; a < toks.size(); ++a) {
            if (toks[a].folded != "and") continue;
            std::optional<std::size_t> left, right;
            for (std::size_t i = 0; i + 1 < a; ++i)
                if (is_determiner(toks[i].folded) && is_alpha_token(toks[i + 1])) left = i + 1;
            for (std::size_t i = a + 1; i + 1 < toks.size(); ++i)
                if (is_determiner(toks[i].folded) && is_alpha_token(toks[i + 1])) {
                    right = i + 1;
                    break;
                }
            if (left && right) {
                findings.push_back(make_finding(
                    RuleId::N4DoubleBarreled, Severity::Warning,
                    sent.start + toks[*left].start, sent.start + toks[*right].end,
                    "asks about \"" + toks[*left].raw + "\" and \"" + toks[*right].raw +
                        "\" in one question; split it",
                    {toks[*left].raw, toks[a].raw, toks[*right].raw}));
                break;
            }
        }
    }

    // N5: leading / prestige phrasings.
    for (const auto& phrase : ctx.lexicons.leading_phrases) {
        std::size_t at = text::find_phrase(all_toks, phrase);
        if (at == std::string::npos) continue;
        std::size_t words = 1 + static_cast<std::size_t>(std::count(phrase.begin(), phrase.end(), ' '));
        std::size_t end = all_toks[at + words - 1].end;
        findings.push_back(make_finding(RuleId::N5Leading, Severity::Warning, all_toks[at].start,
                                        end, "\"" + phrase + "\" steers the respondent", {phrase},
                                        "NeutralTone"));
    }

    // N3: emotionally charged / prestige-laden vocabulary.
    for (const auto& term : ctx.lexicons.emotional_terms) {
        std::size_t at = text::find_phrase(all_toks, term);
        if (at == std::string::npos) continue;
        std::size_t words = 1 + static_cast<std::size_t>(std::count(term.begin(), term.end(), ' '));
        std::size_t end = all_toks[at + words - 1].end;
        findings.push_back(make_finding(RuleId::N3EmotionalOrPrestige, Severity::Info,
                                        all_toks[at].start, end,
                                        "\"" + term + "\" is emotionally loaded", {term},
                                        "NeutralTone"));
    }

    // N7: a universal assertion stated as fact before the actual question.
    static const std::array<const char*, 6> universals = {"all", "every", "everyone",
                                                          "everybody", "nobody", "always"};
    for (std::size_t s = 0; s + 1 < sentences.size(); ++s) {
        const Sentence& sent = sentences[s];
        if (sent.interrogative || sent.tokens.empty()) continue;
        bool later_question = false;
        for (std::size_t k = s + 1; k < sentences.size(); ++k)
            later_question |= sentences[k].interrogative;
        if (!later_question) continue;
        const std::string& first = sent.tokens.front().folded;
        if (std::find(universals.begin(), universals.end(), first) != universals.end()) {
            findings.push_back(make_finding(RuleId::N7FalsePremise, Severity::Info, sent.start,
                                            sent.end,
                                            "asserts a premise before asking; respondents may "
                                            "reject it",
                                            {sent.tokens.front().raw}));
        }
    }

    // N8: explicit future-intention stems only.
    static const std::array<const char*, 3> intention_phrases = {"do you plan to",
                                                                 "do you intend to",
                                                                 "are you planning to"};
    bool n8_found = false;
    for (const char* phrase : intention_phrases) {
        std::size_t at = text::find_phrase(all_toks, phrase);
        if (at != std::string::npos) {
            std::size_t words = 4;
            findings.push_back(make_finding(RuleId::N8FutureIntention, Severity::Warning,
                                            all_toks[at].start, all_toks[at + words - 1].end,
                                            "asks about future intentions, which predict poorly",
                                            {phrase}));
            n8_found = true;
            break;
        }
    }
    if (!n8_found && all_toks.size() > 1 && all_toks[0].folded == "will" &&
        all_toks[1].folded == "you") {
        findings.push_back(make_finding(RuleId::N8FutureIntention, Severity::Warning,
                                        all_toks[0].start, all_toks[1].end,
                                        "asks about future intentions, which predict poorly",
                                        {"will you"}));
    }

    // N9: two negations in one clause.
    for (const Sentence& sent : sentences) {
        std::vector<std::string> clause_negs;
        std::size_t clause_start = sent.start, last_end = sent.start;
        auto flush = [&]() {
            if (clause_negs.size() >= 2) {
                findings.push_back(make_finding(RuleId::N9DoubleNegative, Severity::Warning,
                                                clause_start, last_end,
                                                "double negative; rephrase positively",
                                                clause_negs, "SimplifyWording"));
            }
            clause_negs.clear();
        };
        std::size_t ti = 0;
        for (const Token& t : sent.tokens) {
            // Clause boundary when a comma/semicolon occurs between tokens.
            if (ti > 0) {
                std::string_view gap(stem.data() + sent.tokens[ti - 1].end,
                                     t.start - sent.tokens[ti - 1].end);
                if (gap.find(',') != std::string_view::npos ||
                    gap.find(';') != std::string_view::npos) {
                    flush();
                    clause_start = t.start;
                }
            }
            if (is_negation(t.folded)) clause_negs.push_back(t.raw);
            last_end = t.end;
            ++ti;
        }
        flush();
    }

    // N6: long recall window combined with an exact-count request.
    PeriodMention period = find_reference_period(all_toks);
    bool exact_count = text::find_phrase(all_toks, "how many times") != std::string::npos ||
                       text::find_phrase(all_toks, "number of times") != std::string::npos ||
                       text::find_phrase(all_toks, "exact number") != std::string::npos;
    if (period.present && period.months > 12 && exact_count) {
        findings.push_back(make_finding(RuleId::N6BeyondCapability, Severity::Info, 0,
                                        stem.size(),
                                        "exact counts over a recall window above a year are "
                                        "beyond most respondents",
                                        {}));
    }

    return findings;
}

std::vector<Finding> detect_missing_timeframe(const std::string& stem, const Context& ctx) {
    (void)ctx;
    std::vector<Finding> findings;
    auto toks = text::tokenize(stem);
    static const std::array<const char*, 3> triggers = {"how often", "how frequently",
                                                        "how many times"};
    std::size_t at = std::string::npos;
    std::size_t trigger_words = 0;
    for (const char* t : triggers) {
        at = text::find_phrase(toks, t);
        if (at != std::string::npos) {
            trigger_words = 1 + static_cast<std::size_t>(
                                    std::count(std::string_view(t).begin(),
                                               std::string_view(t).end(), ' '));
            break;
        }
    }
    if (at == std::string::npos) return findings;
    if (find_reference_period(toks).present) return findings;
    findings.push_back(make_finding(RuleId::RTFMissingTimeframe, Severity::Warning,
                                    toks[at].start, toks[at + trigger_words - 1].end,
                                    "frequency question without a reference period",
                                    {stem.substr(toks[at].start,
                                                 toks[at + trigger_words - 1].end - toks[at].start)},
                                    "AddTimeframe"));
    return findings;
}

std::vector<Finding> detect_bridging_inference(const std::string& stem, const Context& ctx) {
    std::vector<Finding> findings;
    auto sentences = text::split_sentences(stem);
    if (sentences.size() < 2) return findings;
    for (std::size_t s = 1; s < sentences.size(); ++s) {
        const Sentence& sent = sentences[s];
        if (!sent.interrogative) continue;
        // Content vocabulary of everything before this sentence.
        std::unordered_set<std::string> prior;
        for (std::size_t p = 0; p < s; ++p)
            for (const Token& t : sentences[p].tokens)
                if (!ctx.lexicons.stopwords.count(t.folded)) prior.insert(t.folded);

        std::optional<std::pair<std::size_t, std::size_t>> cue;  // token range
        std::string cue_text;
        for (std::size_t i = 0; i < sent.tokens.size() && !cue; ++i) {
            const std::string& tok = sent.tokens[i].folded;
            if (tok == "worse" || tok == "better" || tok == "worst" || tok == "best") {
                bool restated = false;
                for (const Token& t : sent.tokens)
                    if (prior.count(t.folded)) restated = true;
                if (!restated) {
                    cue = {i, i};
                    cue_text = sent.tokens[i].raw;
                }
            } else if (tok == "the" && i + 1 < sent.tokens.size() &&
                       sent.tokens[i + 1].folded == "following") {
                cue = {i, i + 1};
                cue_text = "the following";
            } else if ((tok == "this" || tok == "these" || tok == "those") &&
                       (i + 1 >= sent.tokens.size() || !is_alpha_token(sent.tokens[i + 1]))) {
                cue = {i, i};
                cue_text = sent.tokens[i].raw;
            }
        }
        if (cue) {
            findings.push_back(make_finding(
                RuleId::L7BridgingInference, Severity::Info, sent.tokens[cue->first].start,
                sent.tokens[cue->second].end,
                "\"" + cue_text + "\" makes the reader connect back to an earlier idea",
                {cue_text}, "ClarifyTerm"));
        }
    }
    return findings;
}

namespace {

Severity scale_severity(scale::ScaleFindingKind kind) {
    switch (kind) {
        case scale::ScaleFindingKind::Overlap:
        case scale::ScaleFindingKind::InteriorGap:
        case scale::ScaleFindingKind::TopNotCovered:
            return Severity::Warning;
        default:
            return Severity::Info;
    }
}

std::string scale_hint(scale::ScaleFindingKind kind) {
    return kind == scale::ScaleFindingKind::Overlap ? "MutualExclusivity" : "ReviseCategories";
}

std::vector<Finding> scale_findings(const qmodel::Question& q, const Context& ctx) {
    std::vector<Finding> findings;
    if (q.categories.empty()) return findings;
    if (q.kind != qmodel::QuestionKind::ClosedFrequency &&
        q.kind != qmodel::QuestionKind::ClosedAgreement)
        return findings;
    scale::ScaleOptions opts;
    opts.weeks_per_month = ctx.config.weeks_per_month;
    opts.polarity = ctx.lexicons.polarity;
    auto analysis = scale::analyze_scale(q.categories, q.kind, opts);
    for (const auto& sf : analysis.findings) {
        Finding f;
        f.rule = RuleId::N10CategoryScale;
        f.severity = scale_severity(sf.kind);
        std::size_t anchor;
        switch (sf.kind) {
            case scale::ScaleFindingKind::Overlap:
            case scale::ScaleFindingKind::NotParsable:
                anchor = sf.category_indices.empty() ? 0 : sf.category_indices.front();
                break;
            case scale::ScaleFindingKind::SubWeeklyGap:
            case scale::ScaleFindingKind::UnbalancedAgreementScale:
                anchor = 0;
                break;
            default:  // coverage gaps surface at the top of the scale
                anchor = q.categories.size() - 1;
                break;
        }
        f.span = {qmodel::SourceSpan::Target::Category, anchor, 0, q.categories[anchor].size()};
        f.message = sf.detail;
        for (auto i : sf.category_indices) f.evidence.push_back(q.categories[i]);
        f.subkind = to_string(sf.kind);
        if (sf.kind != scale::ScaleFindingKind::NotParsable) f.hint = scale_hint(sf.kind);
        findings.push_back(std::move(f));
    }
    return findings;
}

}  // namespace

std::vector<Finding> lint_question(const qmodel::Question& q, const qmodel::StudyMeta& meta,
                                   const Context& ctx) {
    (void)meta;
    std::vector<Finding> findings;
    auto run = [&](RuleId gate, auto&& fn) {
        if (!ctx.config.rule_enabled(gate)) return;
        auto part = fn();
        findings.insert(findings.end(), part.begin(), part.end());
    };
    if (ctx.config.rule_enabled(RuleId::L1LowFrequencyWord) ||
        ctx.config.rule_enabled(RuleId::N1JargonOrAbbreviation)) {
        auto part = detect_low_frequency_terms(q.stem, ctx);
        std::erase_if(part, [&](const Finding& f) { return !ctx.config.rule_enabled(f.rule); });
        findings.insert(findings.end(), part.begin(), part.end());
    }
    run(RuleId::L2VagueRelativeTerm, [&] { return detect_vague_terms(q.stem, ctx); });
    run(RuleId::L3VagueNounPhrase, [&] { return detect_vague_noun_phrases(q.stem, ctx); });
    if (ctx.config.rule_enabled(RuleId::L4ComplexSyntax) ||
        ctx.config.rule_enabled(RuleId::L5ComplexLogicalStructure)) {
        std::vector<Finding> part;
        measure_syntactic_complexity(q.stem, ctx, &part);
        std::erase_if(part, [&](const Finding& f) { return !ctx.config.rule_enabled(f.rule); });
        findings.insert(findings.end(), part.begin(), part.end());
    }
    run(RuleId::L6Nominalization, [&] { return detect_nominalizations(q.stem, ctx); });
    run(RuleId::L7BridgingInference, [&] { return detect_bridging_inference(q.stem, ctx); });
    {
        auto part = detect_form_flaws(q.stem, ctx);
        std::erase_if(part, [&](const Finding& f) { return !ctx.config.rule_enabled(f.rule); });
        findings.insert(findings.end(), part.begin(), part.end());
    }
    run(RuleId::RTFMissingTimeframe, [&] { return detect_missing_timeframe(q.stem, ctx); });
    run(RuleId::N10CategoryScale, [&] { return scale_findings(q, ctx); });

    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        auto key = [](const Finding& f) {
            return std::tuple(f.span.target == qmodel::SourceSpan::Target::Stem ? 0 : 1,
                              f.span.category_index, f.span.start, static_cast<int>(f.rule),
                              f.message);
        };
        return key(a) < key(b);
    });
    return findings;
}

std::string format_finding(const Finding& f) {
    std::ostringstream out;
    out << to_string(f.rule);
    if (f.subkind) out << "/" << *f.subkind;
    out << " " << to_string(f.severity) << " ";
    if (f.span.target == qmodel::SourceSpan::Target::Stem)
        out << "stem";
    else
        out << "category[" << f.span.category_index << "]";
    out << "[" << f.span.start << ".." << f.span.end << ")";
    if (!f.evidence.empty()) {
        out << " \"";
        for (std::size_t i = 0; i < f.evidence.size(); ++i)
            out << (i ? " " : "") << f.evidence[i];
        out << "\"";
    }
    out << ": " << f.message;
    return out.str();
}

}  // namespace pretestkit::lint

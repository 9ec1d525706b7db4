#include "pretestkit/feedback.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "pretestkit/error.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::feedback {

const char* to_string(SuggestionKind kind) {
    switch (kind) {
        case SuggestionKind::ClarifyTerm: return "ClarifyTerm";
        case SuggestionKind::AddExamples: return "AddExamples";
        case SuggestionKind::ReviseCategories: return "ReviseCategories";
        case SuggestionKind::MutualExclusivity: return "MutualExclusivity";
        case SuggestionKind::AddTimeframe: return "AddTimeframe";
        case SuggestionKind::SpecifyLocation: return "SpecifyLocation";
        case SuggestionKind::NeutralTone: return "NeutralTone";
        case SuggestionKind::SimplifyWording: return "SimplifyWording";
        case SuggestionKind::AddScale: return "AddScale";
        case SuggestionKind::Other: return "Other";
    }
    return "Other";
}

std::optional<SuggestionKind> suggestion_kind_from_string(const std::string& s) {
    static const std::array<SuggestionKind, 10> kinds = {
        SuggestionKind::ClarifyTerm,      SuggestionKind::AddExamples,
        SuggestionKind::ReviseCategories, SuggestionKind::MutualExclusivity,
        SuggestionKind::AddTimeframe,     SuggestionKind::SpecifyLocation,
        SuggestionKind::NeutralTone,      SuggestionKind::SimplifyWording,
        SuggestionKind::AddScale,         SuggestionKind::Other};
    for (SuggestionKind k : kinds)
        if (s == to_string(k)) return k;
    return std::nullopt;
}

const KeywordTable& KeywordTable::builtin() {
    static const KeywordTable table{{
        {SuggestionKind::AddTimeframe,
         {"time frame", "timeframe", "temporal", "time period"}},
        {SuggestionKind::MutualExclusivity,
         {"mutually exclusive", "overlap", "overlapping", "overlaps"}},
        {SuggestionKind::ReviseCategories,
         {"response options", "frequency options", "response categories", "answer categories",
          "options", "categories"}},
        {SuggestionKind::ClarifyTerm,
         {"clarify", "definition", "definitions", "define", "specify what", "interpret",
          "interpreted", "interpretation", "interpretations"}},
        {SuggestionKind::AddExamples, {"examples", "example"}},
        {SuggestionKind::SpecifyLocation, {"location", "locations", "locales"}},
        {SuggestionKind::NeutralTone,
         {"neutral", "leading responses", "leading question", "leading questions", "prestige"}},
        {SuggestionKind::SimplifyWording,
         {"concise", "simplify", "simplified", "rephrase", "rephrasing", "long sentence",
          "shorter", "simpler", "wordy"}},
        {SuggestionKind::AddScale, {"scale", "nuanced"}},
    }};
    return table;
}

KeywordTable KeywordTable::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::IoError, "cannot open keyword table", file.string());
    KeywordTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string entry = text::trim(line);
        if (entry.empty()) continue;
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::MalformedDocument, "keyword table line needs 'Kind: phrases'",
                        file.string());
        auto kind = suggestion_kind_from_string(text::trim(entry.substr(0, colon)));
        if (!kind)
            throw Error(ErrorCode::MalformedDocument,
                        "unknown suggestion kind '" + entry.substr(0, colon) + "'", file.string());
        std::vector<std::string> phrases;
        std::string rest = entry.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string phrase =
                text::fold(text::trim(rest.substr(pos, comma == std::string::npos
                                                           ? std::string::npos
                                                           : comma - pos)));
            if (!phrase.empty()) phrases.push_back(phrase);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        table.families.emplace_back(*kind, std::move(phrases));
    }
    return table;
}

SuggestionKind classify_suggestion(const std::optional<std::string>& title,
                                   const std::string& body, const KeywordTable& table) {
    std::string joined = title ? *title + "\n" + body : body;
    auto tokens = text::tokenize(joined);
    for (const auto& [kind, phrases] : table.families) {
        for (const auto& phrase : phrases) {
            if (text::find_phrase(tokens, phrase) != std::string::npos) return kind;
        }
    }
    return SuggestionKind::Other;
}

namespace {

struct Line {
    std::size_t start;
    std::size_t end;  // exclusive, excluding the newline
};

std::vector<Line> split_lines(const std::string& s, std::size_t from, std::size_t to) {
    std::vector<Line> lines;
    std::size_t start = from;
    for (std::size_t i = from; i < to; ++i) {
        if (s[i] == '\n') {
            lines.push_back({start, i});
            start = i + 1;
        }
    }
    lines.push_back({start, to});
    return lines;
}

// "3. " / "12) " at the start of a line (after indentation).
std::optional<std::size_t> numbered_item_start(const std::string& s, const Line& line) {
    std::size_t i = line.start;
    while (i < line.end && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t digits = 0;
    while (i + digits < line.end && std::isdigit(static_cast<unsigned char>(s[i + digits])))
        ++digits;
    if (digits == 0 || digits > 3) return std::nullopt;
    std::size_t after = i + digits;
    if (after >= line.end || (s[after] != '.' && s[after] != ')')) return std::nullopt;
    if (after + 1 < line.end && !std::isspace(static_cast<unsigned char>(s[after + 1])))
        return std::nullopt;
    return i;
}

// Bullet marker at the start of a line: "-", "–", "—" or "•".
std::optional<std::size_t> bullet_content_start(const std::string& s, const Line& line) {
    std::size_t i = line.start;
    while (i < line.end && (s[i] == ' ' || s[i] == '\t')) ++i;
    static const std::array<const char*, 4> markers = {"-", "\xE2\x80\x93", "\xE2\x80\x94",
                                                       "\xE2\x80\xA2"};
    for (const char* m : markers) {
        std::size_t len = std::string_view(m).size();
        if (i + len <= line.end && s.compare(i, len, m) == 0) {
            std::size_t c = i + len;
            if (c < line.end && s[c] == ' ') ++c;
            // A range like "1-3 times" is not a bullet; require the marker to
            // either end the token or be followed by a space we just consumed.
            if (c == i + len && c < line.end) return std::nullopt;
            return c;
        }
    }
    return std::nullopt;
}

std::string strip_list_decoration(std::string s) {
    std::string t = text::trim(s);
    while (!t.empty() && (t.back() == ',' || t.back() == '.' || t.back() == ';')) t.pop_back();
    return text::trim(t);
}

struct RevisionMarker {
    std::size_t marker_start;
    std::size_t content_start;
};

std::optional<RevisionMarker> find_revision_marker(const std::string& raw) {
    static const std::array<const char*, 5> markers = {
        "improved version:", "here's a revised version",
        "here\xE2\x80\x99s a revised version", "here is a revised version",
        "revised version:"};
    // Byte-wise lowercase keeps offsets aligned with `raw` (fold() does not).
    std::string folded = raw;
    for (char& c : folded) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::optional<RevisionMarker> best;
    for (const char* m : markers) {
        std::size_t from = 0;
        while (true) {
            std::size_t at = folded.find(m, from);
            if (at == std::string::npos) break;
            from = at + 1;
            std::size_t content = at + std::string_view(m).size();
            while (content < raw.size() &&
                   (std::isspace(static_cast<unsigned char>(raw[content])) || raw[content] == '.' ||
                    raw[content] == ':'))
                ++content;
            // "[Proposal]" is a typeset placeholder, not inline revision text.
            if (folded.compare(content, 10, "[proposal]") == 0) continue;
            if (content >= raw.size()) continue;
            if (!best || at > best->marker_start) best = RevisionMarker{at, content};
        }
    }
    return best;
}

}  // namespace

PretestFeedback parse_feedback(const std::string& raw, const KeywordTable& table) {
    PretestFeedback fb;
    fb.raw = raw;
    if (text::is_blank(raw)) return fb;

    std::size_t region_end = raw.size();

    // Revision segment: last explicit marker wins; otherwise a trailing quoted
    // interrogative sentence counts as the proposed rewrite.
    if (auto marker = find_revision_marker(raw)) {
        fb.revision_span = {marker->marker_start, raw.size()};
        region_end = marker->marker_start;

        std::vector<std::string> bullets;
        std::string stem_text;
        for (const Line& line : split_lines(raw, marker->content_start, raw.size())) {
            if (auto content = bullet_content_start(raw, line)) {
                std::string label =
                    strip_list_decoration(raw.substr(*content, line.end - *content));
                if (!label.empty()) bullets.push_back(std::move(label));
            } else {
                std::string part = text::trim(raw.substr(line.start, line.end - line.start));
                if (!part.empty()) stem_text += (stem_text.empty() ? "" : " ") + part;
            }
        }
        if (bullets.size() >= 2) fb.revised_categories = std::move(bullets);
        if (!stem_text.empty()) fb.revised_stem = std::move(stem_text);
    } else {
        std::size_t e = raw.size();
        while (e > 0 && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
        if (e >= 2 && raw[e - 1] == '"' && raw[e - 2] == '?') {
            std::size_t open = raw.rfind('"', e - 2);
            if (open != std::string::npos && e - 2 > open) {
                fb.revised_stem = raw.substr(open + 1, e - 1 - (open + 1));
                fb.revision_span = {open, raw.size()};
                region_end = open;
            }
        }
    }

    // Numbered items within the remaining region.
    auto lines = split_lines(raw, 0, region_end);
    std::vector<std::size_t> item_starts;
    for (const Line& line : lines) {
        if (auto at = numbered_item_start(raw, line)) item_starts.push_back(*at);
    }

    auto add_suggestion = [&](std::size_t start, std::size_t end) {
        std::string_view piece(raw.data() + start, end - start);
        if (text::is_blank(piece)) return;
        Suggestion s;
        s.span_start = start;
        s.span_end = end;
        std::string content = text::trim(piece);
        // Strip the "N." / "N)" marker.
        std::size_t p = 0;
        while (p < content.size() && std::isdigit(static_cast<unsigned char>(content[p]))) ++p;
        if (p > 0 && p < content.size() && (content[p] == '.' || content[p] == ')')) {
            content = text::trim(content.substr(p + 1));
        }
        auto colon = content.find(':');
        if (colon != std::string::npos) {
            std::string head = content.substr(0, colon);
            auto head_tokens = text::tokenize(head);
            bool sentence_punct = head.find_first_of(".!?") != std::string::npos;
            if (!head_tokens.empty() && head_tokens.size() <= 8 && !sentence_punct) {
                s.title = text::trim(head);
                s.body = text::trim(content.substr(colon + 1));
            }
        }
        if (!s.title) s.body = content;
        if (s.body.empty()) {
            if (!s.title) return;
            s.body = *s.title;  // heading-only item
            s.title.reset();
        }
        s.kind = classify_suggestion(s.title, s.body, table);
        s.index = fb.suggestions.size() + 1;
        fb.suggestions.push_back(std::move(s));
    };

    if (item_starts.empty()) {
        add_suggestion(0, region_end);
    } else {
        if (item_starts.front() > 0) add_suggestion(0, item_starts.front());
        for (std::size_t k = 0; k < item_starts.size(); ++k) {
            std::size_t end = k + 1 < item_starts.size() ? item_starts[k + 1] : region_end;
            add_suggestion(item_starts[k], end);
        }
    }

    // Non-blank input must always yield at least one suggestion, even when the
    // whole text turned out to be a revision segment.
    if (fb.suggestions.empty()) {
        add_suggestion(0, region_end);
        if (fb.suggestions.empty()) add_suggestion(0, raw.size());
    }

    // Category list proposed inside a suggestion (dash bullets under a
    // categories/scale item) when no revision segment supplied one.
    if (!fb.revised_categories) {
        for (const Suggestion& s : fb.suggestions) {
            if (s.kind != SuggestionKind::ReviseCategories && s.kind != SuggestionKind::AddScale)
                continue;
            std::vector<std::string> bullets;
            for (const Line& line : split_lines(raw, s.span_start, s.span_end)) {
                if (auto content = bullet_content_start(raw, line)) {
                    std::string label =
                        strip_list_decoration(raw.substr(*content, line.end - *content));
                    if (!label.empty()) bullets.push_back(std::move(label));
                }
            }
            if (bullets.size() >= 2) {
                fb.revised_categories = std::move(bullets);
                break;
            }
        }
    }

    return fb;
}

}  // namespace pretestkit::feedback

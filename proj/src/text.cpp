#include "pretestkit/text.hpp"

#include <algorithm>
#include <cctype>

namespace pretestkit::text {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;  // UTF-8 continuation/lead bytes stay in-token
}

// Multi-byte punctuation we normalize: returns replacement char and sequence
// length, or 0 when `s[i]` starts no known sequence.
std::size_t utf8_punct(std::string_view s, std::size_t i, char& out) {
    auto at = [&](std::size_t k) { return static_cast<unsigned char>(s[i + k]); };
    if (i + 2 < s.size() && at(0) == 0xE2 && at(1) == 0x80) {
        unsigned char c = at(2);
        if (c == 0x98 || c == 0x99) { out = '\''; return 3; }  // ' '
        if (c == 0x9C || c == 0x9D) { out = '"'; return 3; }   // " "
        if (c == 0x93 || c == 0x94) { out = '-'; return 3; }   // – —
        if (c == 0xA2) { out = '-'; return 3; }                // bullet
    }
    if (i + 1 < s.size() && at(0) == 0xC2 && at(1) == 0xA0) { out = ' '; return 2; }  // nbsp
    return 0;
}

}  // namespace

bool Token::all_caps() const {
    std::size_t letters = 0;
    for (unsigned char c : raw) {
        if (std::isalpha(c)) {
            if (!std::isupper(c)) return false;
            ++letters;
        } else if (c >= 0x80) {
            return false;
        }
    }
    return letters >= 2;
}

std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        char repl;
        if (std::size_t n = utf8_punct(s, i, repl)) {
            out.push_back(repl);
            i += n;
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
            ++i;
        }
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    std::size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> tokens;
    std::string folded = fold(s);
    // `folded` and `s` are not byte-aligned (dashes shrink), so walk the
    // original and fold per token instead.
    std::size_t i = 0;
    while (i < s.size()) {
        char repl = 0;
        std::size_t punct_len = utf8_punct(s, i, repl);
        unsigned char c = static_cast<unsigned char>(s[i]);
        bool word_start = punct_len == 0 && is_word_byte(c);
        // A curly apostrophe between letters stays in-token ("don't").
        if (!word_start) {
            i += punct_len ? punct_len : 1;
            continue;
        }
        std::size_t start = i;
        while (i < s.size()) {
            char r = 0;
            std::size_t n = utf8_punct(s, i, r);
            if (n) {
                bool in_word_apostrophe =
                    r == '\'' && i + n < s.size() && is_word_byte(static_cast<unsigned char>(s[i + n])) &&
                    i > start;
                bool in_word_hyphen =
                    r == '-' && i + n < s.size() && std::isalnum(static_cast<unsigned char>(s[i + n])) &&
                    i > start;
                if (!in_word_apostrophe && !in_word_hyphen) break;
                i += n;
                continue;
            }
            unsigned char b = static_cast<unsigned char>(s[i]);
            if (is_word_byte(b)) {
                ++i;
            } else if ((b == '\'' || b == '-') && i > start && i + 1 < s.size() &&
                       is_word_byte(static_cast<unsigned char>(s[i + 1]))) {
                ++i;
            } else {
                break;
            }
        }
        Token tok;
        tok.raw = std::string(s.substr(start, i - start));
        tok.folded = fold(tok.raw);
        tok.start = start;
        tok.end = i;
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

std::vector<Sentence> split_sentences(std::string_view s) {
    std::vector<Sentence> sentences;
    std::size_t start = 0;
    auto protected_abbrev = [&](std::size_t dot) {
        static const char* abbrevs[] = {"e.g", "i.e", "etc", "vs", "dr", "mr", "mrs", "ms"};
        for (const char* a : abbrevs) {
            std::size_t len = std::string_view(a).size();
            if (dot >= len) {
                std::string before = fold(s.substr(dot - len, len));
                if (before == a && (dot == len || !std::isalpha(static_cast<unsigned char>(s[dot - len - 1]))))
                    return true;
            }
        }
        return false;
    };
    auto flush = [&](std::size_t end) {
        std::string_view piece = s.substr(start, end - start);
        if (!is_blank(piece)) {
            Sentence sent;
            sent.start = start;
            sent.end = end;
            sent.tokens = tokenize(piece);
            for (auto& t : sent.tokens) {
                t.start += start;
                t.end += start;
            }
            std::size_t last = end;
            while (last > start && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
            sent.interrogative = last > start && s[last - 1] == '?';
            if (!sent.tokens.empty()) sentences.push_back(std::move(sent));
        }
        start = end;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' || c == '!' || c == '?') {
            if (c == '.' && protected_abbrev(i)) continue;
            std::size_t j = i + 1;
            while (j < s.size() && (s[j] == '.' || s[j] == '!' || s[j] == '?' || s[j] == '"' || s[j] == '\''))
                ++j;
            if (j >= s.size() || std::isspace(static_cast<unsigned char>(s[j]))) {
                flush(j);
                i = j > 0 ? j - 1 : 0;
            }
        }
    }
    if (start < s.size()) flush(s.size());
    return sentences;
}

std::vector<std::string> folded_tokens(std::string_view s) {
    std::vector<std::string> out;
    for (auto& t : tokenize(s)) out.push_back(t.folded);
    return out;
}

std::size_t find_phrase(const std::vector<Token>& tokens, std::string_view phrase) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : phrase) {
        if (c == ' ') {
            if (!cur.empty()) words.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    if (words.empty() || tokens.size() < words.size()) return std::string::npos;
    for (std::size_t i = 0; i + words.size() <= tokens.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (tokens[i + k].folded != words[k]) {
                ok = false;
                break;
            }
        }
        if (ok) return i;
    }
    return std::string::npos;
}

bool contains_phrase(std::string_view folded_text, std::string_view phrase) {
    auto toks = tokenize(folded_text);
    return find_phrase(toks, phrase) != std::string::npos;
}

}  // namespace pretestkit::text

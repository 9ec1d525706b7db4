#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pretestkit::text {

/// One word token. Spans are byte offsets into the original (unnormalized)
/// string so that finding evidence can be extracted verbatim.
struct Token {
    std::string folded;  // lowercased, quotes straightened, dashes normalized
    std::string raw;     // exact bytes from the source
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive

    bool all_caps() const;
};

struct Sentence {
    std::size_t start = 0;
    std::size_t end = 0;            // exclusive, byte offsets
    std::vector<Token> tokens;      // word tokens only
    bool interrogative = false;     // ends with '?'
};

/// Lowercase ASCII; maps curly quotes to straight ones and en/em dashes to '-'.
std::string fold(std::string_view s);

std::string trim(std::string_view s);
bool is_blank(std::string_view s);

/// Splits on anything that is not a letter, digit or in-word apostrophe/hyphen.
/// "don't" and "1-2" stay single tokens; punctuation is dropped.
std::vector<Token> tokenize(std::string_view s);

/// Sentence boundaries at . ! ? followed by whitespace or end of text,
/// with a guard for "e.g." / "i.e." / "etc.".
std::vector<Sentence> split_sentences(std::string_view s);

/// Folded word tokens only — the normalization shared by the diff engine.
std::vector<std::string> folded_tokens(std::string_view s);

/// True when `phrase` (one or more folded words) occurs as a whole-word
/// sequence inside `tokens`. Returns the match start index or npos.
std::size_t find_phrase(const std::vector<Token>& tokens, std::string_view phrase);

bool contains_phrase(std::string_view folded_text, std::string_view phrase);

}  // namespace pretestkit::text

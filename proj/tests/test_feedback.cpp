#include <doctest.h>

#include <cctype>

#include "pretestkit/feedback.hpp"
#include "test_support.hpp"

using namespace pretestkit;
using feedback::SuggestionKind;

namespace {

std::string fixture_feedback(const std::string& name) {
    return testsupport::read_fixture_text("feedback/" + name);
}

std::string roleplay_response(int row) {
    return fixture_feedback("comprehension_q" + std::to_string(row) + ".txt") +
           "\n\nImproved version: " +
           testsupport::read_fixture_text("proposals/ai_q" + std::to_string(row) + ".txt");
}

// Every non-whitespace byte of raw must be claimed by a suggestion span or the
// revision span.
void check_lossless(const feedback::PretestFeedback& fb) {
    std::vector<bool> covered(fb.raw.size(), false);
    for (const auto& s : fb.suggestions)
        for (std::size_t i = s.span_start; i < s.span_end; ++i) covered[i] = true;
    if (fb.revision_span)
        for (std::size_t i = fb.revision_span->first; i < fb.revision_span->second; ++i)
            covered[i] = true;
    for (std::size_t i = 0; i < fb.raw.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(fb.raw[i]))) {
            REQUIRE_MESSAGE(covered[i], "byte ", i, " ('", fb.raw[i], "') lost by the parser");
        }
    }
}

}  // namespace

TEST_CASE("the four sequential-feedback fixtures parse to 5, 4, 5, 3 items") {
    const std::size_t expected[] = {5, 4, 5, 3};
    for (int level = 1; level <= 4; ++level) {
        auto fb = feedback::parse_feedback(
            fixture_feedback("nature_level" + std::to_string(level) + ".txt"));
        CHECK_MESSAGE(fb.suggestions.size() == expected[level - 1], "level ", level);
        check_lossless(fb);
        for (std::size_t i = 0; i < fb.suggestions.size(); ++i)
            CHECK(fb.suggestions[i].index == i + 1);
    }
}

TEST_CASE("level-1 feedback classifications") {
    auto fb = feedback::parse_feedback(fixture_feedback("nature_level1.txt"));
    REQUIRE(fb.suggestions.size() == 5);
    CHECK(fb.suggestions[0].kind == SuggestionKind::ClarifyTerm);
    CHECK(fb.suggestions[1].kind == SuggestionKind::SpecifyLocation);
    CHECK(fb.suggestions[2].kind == SuggestionKind::ReviseCategories);
    CHECK(fb.suggestions[3].kind == SuggestionKind::AddTimeframe);
    CHECK(fb.suggestions[4].kind == SuggestionKind::NeutralTone);
    CHECK(fb.suggestions[0].title.value() == "Clarify the Definition of \"Activities\"");
    CHECK_FALSE(fb.revised_stem.has_value());
}

TEST_CASE("level-2 feedback carries the hallucinated-overlap suggestion") {
    auto fb = feedback::parse_feedback(fixture_feedback("nature_level2.txt"));
    REQUIRE(fb.suggestions.size() == 4);
    CHECK(fb.suggestions[0].kind == SuggestionKind::ClarifyTerm);
    CHECK(fb.suggestions[1].kind == SuggestionKind::ReviseCategories);
    CHECK(fb.suggestions[2].kind == SuggestionKind::MutualExclusivity);
    CHECK(fb.suggestions[3].kind == SuggestionKind::AddTimeframe);
}

TEST_CASE("level-4 feedback yields the seven revised categories") {
    auto fb = feedback::parse_feedback(fixture_feedback("nature_level4.txt"));
    REQUIRE(fb.suggestions.size() == 3);
    CHECK(fb.suggestions[0].kind == SuggestionKind::SimplifyWording);
    CHECK(fb.suggestions[1].kind == SuggestionKind::ReviseCategories);
    CHECK(fb.suggestions[2].kind == SuggestionKind::ClarifyTerm);
    REQUIRE(fb.revised_categories.has_value());
    const std::vector<std::string> expected = {
        "Never",           "Less than once a month", "1-3 times a month", "Once a week",
        "2-3 times a week", "4-5 times a week",       "Daily"};
    CHECK(*fb.revised_categories == expected);
    check_lossless(fb);
}

TEST_CASE("role-play responses split feedback from the improved version") {
    auto fb = feedback::parse_feedback(roleplay_response(1));
    REQUIRE(fb.suggestions.size() == 1);
    CHECK(fb.revised_stem.value() ==
          "Over the past month, how frequently have you experienced physical pain, such as "
          "headaches, muscle aches, or joint pain?");
    check_lossless(fb);
}

TEST_CASE("the placeholder marker inside row-5 feedback is not treated as the revision") {
    auto fb = feedback::parse_feedback(roleplay_response(5));
    REQUIRE(fb.revised_stem.has_value());
    CHECK(fb.revised_stem->starts_with("Do you believe it should be permissible"));
    // The placeholder stays part of the commentary.
    REQUIRE(fb.suggestions.size() == 1);
    CHECK(fb.suggestions[0].body.find("[Proposal]") != std::string::npos);
    check_lossless(fb);
}

TEST_CASE("row-6 response parses to a scale suggestion with the balanced list") {
    auto fb = feedback::parse_feedback(roleplay_response(6));
    REQUIRE(fb.suggestions.size() == 1);
    CHECK(fb.suggestions[0].kind == SuggestionKind::AddScale);
    REQUIRE(fb.revised_categories.has_value());
    CHECK(fb.revised_categories->size() == 5);
    CHECK(fb.revised_categories->front() == "Strongly agree");
    CHECK(fb.revised_categories->back() == "Strongly disagree");
    REQUIRE(fb.revised_stem.has_value());
    CHECK(fb.revised_stem->starts_with("To what extent do you agree or disagree"));
}

TEST_CASE("trailing quoted interrogative counts as a revision") {
    auto fb = feedback::parse_feedback(
        "The wording is dense. Try this instead: \"How often do you jog?\"");
    REQUIRE(fb.revised_stem.has_value());
    CHECK(*fb.revised_stem == "How often do you jog?");
}

TEST_CASE("revision-only responses still yield a suggestion") {
    auto fb = feedback::parse_feedback("Improved version: How often do you jog?");
    CHECK(fb.revised_stem.value() == "How often do you jog?");
    REQUIRE(fb.suggestions.size() == 1);
    check_lossless(fb);
}

TEST_CASE("degenerate inputs") {
    auto fb = feedback::parse_feedback("");
    CHECK(fb.suggestions.empty());
    CHECK(fb.raw.empty());

    fb = feedback::parse_feedback("   \n \t ");
    CHECK(fb.suggestions.empty());

    fb = feedback::parse_feedback("Plain unstructured remark about the question.");
    REQUIRE(fb.suggestions.size() == 1);
    CHECK(fb.suggestions[0].kind == SuggestionKind::Other);
    CHECK(fb.suggestions[0].body == "Plain unstructured remark about the question.");
    check_lossless(fb);
}

TEST_CASE("classification keyword families, in spec order") {
    using feedback::classify_suggestion;
    CHECK(classify_suggestion(std::string("Add a Time Frame"),
                              "Specify a time frame for better accuracy, such as \"in a typical "
                              "week\" or \"during the past month.\"") ==
          SuggestionKind::AddTimeframe);
    CHECK(classify_suggestion(std::string("Use a Clear and Neutral Tone"),
                              "Ensure the question is phrased in a way that is neutral and "
                              "straightforward to avoid leading responses.") ==
          SuggestionKind::NeutralTone);
    CHECK(classify_suggestion(std::string("Consistency in Option Ranges"),
                              "Ensure that the response categories are mutually exclusive and "
                              "collectively exhaustive.") ==
          SuggestionKind::MutualExclusivity);
    CHECK(classify_suggestion(std::nullopt, "No keyword family covers this remark.") ==
          SuggestionKind::Other);
    // "overlap" outranks "categories": the mutual-exclusivity family is earlier.
    CHECK(classify_suggestion(std::nullopt,
                              "There is an overlap in the current categories.") ==
          SuggestionKind::MutualExclusivity);
}

TEST_CASE("title detection: eight-word cap, colon in long sentences is body text") {
    auto fb = feedback::parse_feedback(
        "1. Rephrase the question to make it more clear and concise: \"How often?\"");
    REQUIRE(fb.suggestions.size() == 1);
    CHECK_FALSE(fb.suggestions[0].title.has_value());

    fb = feedback::parse_feedback("1. Short heading: with a body after the colon.");
    REQUIRE(fb.suggestions.size() == 1);
    CHECK(fb.suggestions[0].title.value() == "Short heading");
    CHECK(fb.suggestions[0].body == "with a body after the colon.");
}

TEST_CASE("keyword table loads from the shipped config file and matches the builtin") {
    auto table =
        feedback::KeywordTable::load(testsupport::repo_root() / "config/suggestion_keywords.txt");
    const auto& builtin = feedback::KeywordTable::builtin();
    REQUIRE(table.families.size() == builtin.families.size());
    for (std::size_t i = 0; i < table.families.size(); ++i) {
        CHECK(table.families[i].first == builtin.families[i].first);
        CHECK(table.families[i].second == builtin.families[i].second);
    }
}

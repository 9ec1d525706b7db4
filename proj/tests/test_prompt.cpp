#include <doctest.h>

#include "pretestkit/error.hpp"
#include "pretestkit/prompt.hpp"
#include "test_support.hpp"

using namespace pretestkit;
using prompt::Level;

TEST_CASE("question block renders inline numbered categories") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    CHECK(prompt::render_question_block(doc.questions[0]) ==
          "How frequently do you engage in activities within natural environments (such as parks "
          "and gardens) outside your university campus? (1) Never, (2) 1-2 days a week, (3) 3-4 "
          "days a week");

    qmodel::Question open{"w", "Why?", qmodel::QuestionKind::Open, {}};
    CHECK(prompt::render_question_block(open) == "Why?");

    qmodel::Question two{"t", "Pick one.", qmodel::QuestionKind::ClosedAgreement,
                         {"Agree", "Disagree"}};
    CHECK(prompt::render_question_block(two) == "Pick one. (1) Agree, (2) Disagree");
}

TEST_CASE("sequential prompt levels match the shipped golden texts byte-for-byte") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    const std::pair<Level, const char*> cases[] = {
        {Level::TaskOnly, "prompts/nature_level1.txt"},
        {Level::TaskAim, "prompts/nature_level2.txt"},
        {Level::TaskAimPopulation, "prompts/nature_level3.txt"},
        {Level::TaskAimPopulationPrinciples, "prompts/nature_level4.txt"},
    };
    for (const auto& [level, golden] : cases) {
        auto spec = prompt::build_prompt({level}, doc.questions[0], doc.meta);
        CHECK_MESSAGE(spec.text == testsupport::read_fixture_text(golden), "level mismatch for ",
                      golden);
    }
}

TEST_CASE("role-play prompt matches the golden text byte-for-byte") {
    auto doc = testsupport::load_fixture_questionnaire("comprehension.q.json");
    auto spec = prompt::build_prompt({Level::RolePlayGeneral}, doc.questions[0], doc.meta);
    CHECK(spec.text == testsupport::read_fixture_text("prompts/roleplay_q1.txt"));
}

TEST_CASE("profile variant swaps the respondent description") {
    auto doc = testsupport::load_fixture_questionnaire("comprehension.q.json");
    prompt::PromptLevel level{Level::RolePlayProfile, "a retired nurse living alone"};
    auto spec = prompt::build_prompt(level, doc.questions[0], doc.meta);
    CHECK(spec.text.find("Imagine you are a retired nurse living alone and evaluate") !=
          std::string::npos);
    CHECK(spec.text.find("general population") == std::string::npos);

    CHECK_THROWS_AS(
        prompt::build_prompt({Level::RolePlayProfile, "  "}, doc.questions[0], doc.meta), Error);
}

TEST_CASE("monotone context: each level contains the previous one's sentences") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    std::string prev;
    for (Level level : {Level::TaskOnly, Level::TaskAim, Level::TaskAimPopulation,
                        Level::TaskAimPopulationPrinciples}) {
        auto spec = prompt::build_prompt({level}, doc.questions[0], doc.meta);
        if (!prev.empty()) {
            // Everything before the closing sentence is a prefix of the next level.
            std::string closing = "You do not need";
            auto cut = prev.find(closing);
            REQUIRE(cut != std::string::npos);
            CHECK(spec.text.substr(0, cut) == prev.substr(0, cut));
            CHECK(spec.text.find(prev.substr(cut)) != std::string::npos);
        }
        prev = spec.text;
    }
}

TEST_CASE("missing context fails with the specific error") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    auto no_aim = doc.meta;
    no_aim.aim.reset();
    try {
        prompt::build_prompt({Level::TaskAim}, doc.questions[0], no_aim);
        FAIL("expected MissingAim");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingAim);
    }
    auto no_pop = doc.meta;
    no_pop.population.reset();
    try {
        prompt::build_prompt({Level::TaskAimPopulation}, doc.questions[0], no_pop);
        FAIL("expected MissingPopulation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingPopulation);
    }
    // Role play needs neither.
    CHECK_NOTHROW(prompt::build_prompt({Level::RolePlayGeneral}, doc.questions[0], no_aim));
}

TEST_CASE("principle catalog is the fixed ten") {
    const auto& principles = prompt::principle_catalog();
    REQUIRE(principles.size() == 10);
    CHECK(principles.front() == "avoid jargon, and abbreviations");
    CHECK(principles.back() == "avoid overlapping or unbalanced response categories");
}

TEST_CASE("every level embeds the rendered question block exactly once") {
    auto nature_doc = testsupport::load_fixture_questionnaire("nature.q.json");
    auto comprehension_doc = testsupport::load_fixture_questionnaire("comprehension.q.json");
    auto count_occurrences = [](const std::string& hay, const std::string& needle) {
        std::size_t count = 0, at = 0;
        while ((at = hay.find(needle, at)) != std::string::npos) {
            ++count;
            at += 1;
        }
        return count;
    };
    for (Level level : {Level::TaskOnly, Level::TaskAim, Level::TaskAimPopulation,
                        Level::TaskAimPopulationPrinciples}) {
        auto spec = prompt::build_prompt({level}, nature_doc.questions[0], nature_doc.meta);
        CHECK(count_occurrences(spec.text,
                                prompt::render_question_block(nature_doc.questions[0])) == 1);
    }
    for (const auto& q : comprehension_doc.questions) {
        auto spec = prompt::build_prompt({Level::RolePlayGeneral}, q, comprehension_doc.meta);
        CHECK(count_occurrences(spec.text, prompt::render_question_block(q)) == 1);
    }
}

TEST_CASE("equal inputs produce equal digests; different levels differ") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    auto a = prompt::build_prompt({Level::TaskOnly}, doc.questions[0], doc.meta);
    auto b = prompt::build_prompt({Level::TaskOnly}, doc.questions[0], doc.meta);
    auto c = prompt::build_prompt({Level::TaskAim}, doc.questions[0], doc.meta);
    CHECK(a.digest == b.digest);
    CHECK(a.digest != c.digest);
    CHECK(a.digest.size() == 64);
}

TEST_CASE("optional survey-mode sentence stays off by default") {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    doc.meta.mode = qmodel::SurveyMode::Telephone;
    auto spec = prompt::build_prompt({Level::TaskAimPopulation}, doc.questions[0], doc.meta);
    CHECK(spec.text.find("survey mode") == std::string::npos);

    prompt::PromptOptions opts;
    opts.include_mode_sentence = true;
    spec = prompt::build_prompt({Level::TaskAimPopulation}, doc.questions[0], doc.meta, opts);
    CHECK(spec.text.find("The survey mode is telephone. ") != std::string::npos);
}

#include <doctest.h>

#include "pretestkit/report.hpp"
#include "test_support.hpp"

using namespace pretestkit;

namespace {

report::PretestRun nature_run(const std::string& generated_at) {
    auto doc = testsupport::load_fixture_questionnaire("nature.q.json");
    auto& ctx = testsupport::lint_context();

    report::PretestRun run;
    run.run_id = "nature-level2";
    run.tool_version = "0.1.0";
    run.generated_at = generated_at;
    run.questionnaire = doc;

    report::QuestionRecord rec;
    rec.question_id = "q1";
    rec.findings = lint::lint_question(doc.questions[0], doc.meta, ctx);
    auto spec = prompt::build_prompt({prompt::Level::TaskAim}, doc.questions[0], doc.meta);
    run.transcript_digests.push_back(spec.digest);
    rec.prompts.push_back(spec);
    auto fb =
        feedback::parse_feedback(testsupport::read_fixture_text("feedback/nature_level2.txt"));
    rec.judgments = compare::cross_check(rec.findings, fb);
    rec.feedbacks.push_back(std::move(fb));
    run.records.push_back(std::move(rec));
    return run;
}

}  // namespace

TEST_CASE("json rendering round-trips and is byte-stable") {
    auto run = nature_run("2024-05-01T00:00:00Z");
    std::string rendered = report::render_json(run);
    auto parsed = report::parse_run(rendered);
    CHECK(report::render_json(parsed) == rendered);
    CHECK(parsed.run_id == run.run_id);
    CHECK(parsed.questionnaire == run.questionnaire);
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].findings == run.records[0].findings);
    CHECK(parsed.records[0].feedbacks == run.records[0].feedbacks);
    CHECK(parsed.records[0].judgments == run.records[0].judgments);
}

TEST_CASE("the fixture run's json carries a researcher-judgment entry") {
    std::string rendered = report::render_json(nature_run("2024-05-01T00:00:00Z"));
    CHECK(rendered.find("UnsupportedByLint") != std::string::npos);
}

TEST_CASE("timestamps live in the envelope, not the canonical run body") {
    auto a = report::render_json(nature_run("2024-05-01T00:00:00Z"));
    auto b = report::render_json(nature_run("2031-12-31T23:59:59Z"));
    auto strip_envelope = [](const std::string& doc) {
        auto at = doc.find("\"run\"");
        REQUIRE(at != std::string::npos);
        return doc.substr(at);
    };
    CHECK(a != b);
    CHECK(strip_envelope(a) == strip_envelope(b));
}

TEST_CASE("empty run renders valid documents") {
    report::PretestRun run;
    run.run_id = "empty";
    run.tool_version = "0.1.0";
    run.generated_at = "2024-05-01T00:00:00Z";
    std::string rendered = report::render_json(run);
    auto parsed = report::parse_run(rendered);
    CHECK(parsed.records.empty());
    CHECK(report::render_json(parsed) == rendered);

    std::string md = report::render_markdown(run);
    CHECK(md.find("Pretest report: empty") != std::string::npos);
}

TEST_CASE("markdown surfaces the judgment queue with the caution note") {
    auto run = nature_run("2024-05-01T00:00:00Z");
    std::string md = report::render_markdown(run);
    CHECK(md.find("## Question q1") != std::string::npos);
    CHECK(md.find("### Researcher judgment queue") != std::string::npos);
    CHECK(md.find("UnsupportedByLint") != std::string::npos);
    CHECK(md.find("AI advice is input, not verdict") != std::string::npos);
    // Exactly one judgment-queue section for the single triage-bearing question.
    std::size_t count = 0, at = 0;
    while ((at = md.find("### Researcher judgment queue", at)) != std::string::npos) {
        ++count;
        ++at;
    }
    CHECK(count == 1);
}

TEST_CASE("questions with nothing to say render the placeholder") {
    auto doc = testsupport::load_fixture_questionnaire("clean.q.json");
    report::PretestRun run;
    run.run_id = "clean";
    run.tool_version = "0.1.0";
    run.generated_at = "2024-05-01T00:00:00Z";
    run.questionnaire = doc;
    report::QuestionRecord rec;
    rec.question_id = "c1";
    run.records.push_back(rec);
    std::string md = report::render_markdown(run);
    CHECK(md.find("No issues detected.") != std::string::npos);
}

TEST_CASE("markdown golden for the level-2 fixture run") {
    auto run = nature_run("2024-05-01T00:00:00Z");
    std::string md = report::render_markdown(run);
    auto golden_path = testsupport::repo_root() / "fixtures/golden/nature_level2.report.md";
    CHECK(md == testsupport::read_file(golden_path));
}

TEST_CASE("atomic writes leave no temp file behind") {
    auto dir = std::filesystem::temp_directory_path();
    auto target = dir / "pretestkit_atomic_test.txt";
    report::write_file_atomic(target.string(), "payload");
    CHECK(testsupport::read_file(target) == "payload");
    CHECK_FALSE(std::filesystem::exists(target.string() + ".tmp"));
    std::filesystem::remove(target);
}

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pretestkit/compare.hpp"
#include "pretestkit/error.hpp"
#include "pretestkit/feedback.hpp"
#include "pretestkit/lint.hpp"
#include "pretestkit/llmclient.hpp"
#include "pretestkit/prompt.hpp"
#include "pretestkit/qmodel.hpp"
#include "pretestkit/report.hpp"
#include "pretestkit/sha256.hpp"
#include "pretestkit/text.hpp"
#include "pretestkit/version.hpp"

namespace pk = pretestkit;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStrictGate = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNetwork = 4;

int exit_code_for(const pk::Error& e) {
    switch (e.code()) {
        case pk::ErrorCode::AuthMissing:
        case pk::ErrorCode::NetworkFailure:
        case pk::ErrorCode::RateLimited:
        case pk::ErrorCode::TranscriptMiss:
            return kExitNetwork;
        case pk::ErrorCode::MissingAim:
        case pk::ErrorCode::MissingPopulation:
        case pk::ErrorCode::EmptyProfile:
            return kExitUsage;
        default:
            return kExitIo;
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pk::Error(pk::ErrorCode::IoError, "cannot open file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOptions {
    std::string lexicon_dir = "lexicons";
    std::string keywords_file;
    std::string mapping_file;
    std::string base_url = "https://api.openai.com";
    std::string model = "gpt-4";
    double temperature = 0.7;
    int max_tokens = 1024;
    int concurrency = 2;
};

pk::lint::Context load_lint_context(const CommonOptions& common,
                                    const std::vector<std::string>& disabled) {
    pk::lint::LintConfig cfg;
    cfg.lexicon_dir = common.lexicon_dir;
    for (const auto& name : disabled) {
        auto rule = pk::lint::rule_from_string(name);
        if (!rule)
            throw CLI::ValidationError("--disable", "unknown rule id '" + name + "'");
        cfg.enabled[*rule] = false;
    }
    return pk::lint::Context::load(std::move(cfg));
}

pk::feedback::KeywordTable load_keywords(const CommonOptions& common) {
    if (common.keywords_file.empty()) return pk::feedback::KeywordTable::builtin();
    return pk::feedback::KeywordTable::load(common.keywords_file);
}

pk::compare::KindMapping load_mapping(const CommonOptions& common) {
    if (common.mapping_file.empty()) return pk::compare::KindMapping::builtin();
    return pk::compare::KindMapping::load(common.mapping_file);
}

/// Lints all questions, fanning out across a bounded worker pool.
std::vector<std::vector<pk::lint::Finding>> lint_all(const pk::qmodel::Questionnaire& doc,
                                                     const pk::lint::Context& ctx) {
    std::vector<std::vector<pk::lint::Finding>> results(doc.questions.size());
    std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < doc.questions.size(); ++i) {
        if (pending.size() >= workers) {
            pending.front().get();
            pending.erase(pending.begin());
        }
        pending.push_back(std::async(std::launch::async, [&, i] {
            results[i] = pk::lint::lint_question(doc.questions[i], doc.meta, ctx);
        }));
    }
    for (auto& f : pending) f.get();
    return results;
}

int run_lint(const std::string& file, const CommonOptions& common,
             const std::vector<std::string>& disabled, bool strict, const std::string& format) {
    auto doc = pk::qmodel::load_questionnaire_file(file);
    auto ctx = load_lint_context(common, disabled);
    auto results = lint_all(doc, ctx);

    bool gate = false;
    if (format == "json") {
        std::vector<std::pair<std::string, std::vector<pk::lint::Finding>>> per_question;
        for (std::size_t i = 0; i < doc.questions.size(); ++i)
            per_question.emplace_back(doc.questions[i].id, results[i]);
        std::cout << pk::report::render_findings_json(per_question);
        for (const auto& [id, findings] : per_question)
            for (const auto& f : findings)
                gate |= f.severity != pk::lint::Severity::Info;
    } else {
        for (std::size_t i = 0; i < doc.questions.size(); ++i) {
            std::cout << doc.questions[i].id << ":\n";
            if (results[i].empty()) std::cout << "  (clean)\n";
            for (const auto& f : results[i]) {
                std::cout << "  " << pk::lint::format_finding(f) << "\n";
                gate |= f.severity != pk::lint::Severity::Info;
            }
        }
    }
    if (strict && gate) {
        std::cerr << "strict mode: warnings present\n";
        return kExitStrictGate;
    }
    return kExitOk;
}

pk::prompt::PromptLevel parse_level(const std::string& level, const std::string& profile) {
    using pk::prompt::Level;
    pk::prompt::PromptLevel out;
    if (level == "1")
        out.level = Level::TaskOnly;
    else if (level == "2")
        out.level = Level::TaskAim;
    else if (level == "3")
        out.level = Level::TaskAimPopulation;
    else if (level == "4")
        out.level = Level::TaskAimPopulationPrinciples;
    else if (level == "roleplay" && profile.empty())
        out.level = Level::RolePlayGeneral;
    else if (level == "roleplay")
        out.level = Level::RolePlayProfile;
    else
        throw CLI::ValidationError("--level", "expected 1|2|3|4|roleplay, got '" + level + "'");
    out.profile = profile;
    return out;
}

int run_pretest(const std::string& file, const CommonOptions& common,
                const std::string& level_name, const std::string& profile,
                const std::string& mode_name, const std::string& transcripts_path,
                const std::string& out_dir, std::string run_id, std::string timestamp,
                bool include_mode_sentence) {
    auto mode = pk::llm::client_mode_from_string(mode_name);
    if (!mode)
        throw CLI::ValidationError("--mode", "expected live|record|replay, got '" + mode_name +
                                                 "'");
    pk::prompt::PromptLevel level = parse_level(level_name, profile);

    auto doc = pk::qmodel::load_questionnaire_file(file);
    auto ctx = load_lint_context(common, {});
    auto keywords = load_keywords(common);
    auto mapping = load_mapping(common);

    pk::llm::Transcript transcript;
    if (*mode == pk::llm::ClientMode::Replay) {
        if (transcripts_path.empty())
            throw CLI::ValidationError("--transcripts", "replay mode needs a transcript file");
        transcript = pk::llm::Transcript::load_file(transcripts_path);
    } else if (*mode == pk::llm::ClientMode::Record && !transcripts_path.empty() &&
               fs::exists(transcripts_path)) {
        transcript = pk::llm::Transcript::load_file(transcripts_path);
    }

    pk::llm::ClientConfig client_cfg;
    client_cfg.base_url = common.base_url;
    client_cfg.concurrency_limit = common.concurrency;
    pk::llm::LlmClient client(client_cfg, *mode, &transcript);

    pk::prompt::PromptOptions popts;
    popts.include_mode_sentence = include_mode_sentence;
    popts.params = {common.model, common.temperature, common.max_tokens};

    pk::report::PretestRun run;
    run.tool_version = pk::kVersion;
    run.generated_at = timestamp.empty() ? pk::llm::iso8601_now() : timestamp;
    run.questionnaire = doc;

    auto lint_results = lint_all(doc, ctx);
    for (std::size_t i = 0; i < doc.questions.size(); ++i) {
        const auto& q = doc.questions[i];
        pk::report::QuestionRecord rec;
        rec.question_id = q.id;
        rec.findings = lint_results[i];

        auto spec = pk::prompt::build_prompt(level, q, doc.meta, popts);
        auto result = client.complete({spec.text, popts.params});
        auto fb = pk::feedback::parse_feedback(result.text, keywords);

        if (fb.revised_stem)
            rec.diffs.push_back(pk::compare::diff_revision(q.stem, *fb.revised_stem));
        if (fb.revised_categories && !q.categories.empty())
            rec.diffs.push_back(pk::compare::diff_categories(q.categories, *fb.revised_categories));
        rec.judgments = pk::compare::cross_check(rec.findings, fb, mapping);

        run.transcript_digests.push_back(spec.digest);
        rec.prompts.push_back(std::move(spec));
        rec.feedbacks.push_back(std::move(fb));
        run.records.push_back(std::move(rec));
    }

    if (*mode == pk::llm::ClientMode::Record && !transcripts_path.empty())
        transcript.save_file(transcripts_path);

    if (run_id.empty()) {
        std::string key = pk::qmodel::serialize_questionnaire(doc) + level_name + mode_name;
        run_id = "run-" + pk::sha256_hex(key).substr(0, 12);
    }
    run.run_id = run_id;

    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path json_path = dir / (run_id + ".report.json");
    fs::path md_path = dir / (run_id + ".report.md");
    pk::report::write_file_atomic(json_path.string(), pk::report::render_json(run));
    pk::report::write_file_atomic(md_path.string(), pk::report::render_markdown(run));
    std::cout << json_path.string() << "\n" << md_path.string() << "\n";
    return kExitOk;
}

int run_compare(const std::string& file, const CommonOptions& common,
                const std::string& question_id, const std::string& ai_file,
                const std::string& expert_file) {
    (void)common;
    auto doc = pk::qmodel::load_questionnaire_file(file);
    if (doc.questions.empty())
        throw pk::Error(pk::ErrorCode::MalformedDocument, "questionnaire has no questions", file);
    const pk::qmodel::Question* q =
        question_id.empty() ? &doc.questions.front() : doc.find(question_id);
    if (!q)
        throw pk::Error(pk::ErrorCode::MalformedDocument, "no question with id '" + question_id +
                                                              "'", file);
    std::string ai = pk::text::trim(read_text_file(ai_file));
    std::string expert = pk::text::trim(read_text_file(expert_file));
    auto report = pk::compare::compare_proposals(q->stem, ai, expert);

    auto print_edit = [&](const pk::compare::EditOp& op, const char* bucket) {
        std::cout << bucket << " " << pk::compare::to_string(op.kind) << " "
                  << pk::compare::to_string(op.semantic) << ": [";
        for (std::size_t i = 0; i < op.old_tokens.size(); ++i)
            std::cout << (i ? " " : "") << op.old_tokens[i];
        std::cout << "] -> [";
        for (std::size_t i = 0; i < op.new_tokens.size(); ++i)
            std::cout << (i ? " " : "") << op.new_tokens[i];
        std::cout << "]\n";
    };
    for (const auto& m : report.shared) print_edit(m.ai, "shared");
    for (const auto& op : report.ai_only) print_edit(op, "ai-only");
    for (const auto& op : report.expert_only) print_edit(op, "expert-only");
    return kExitOk;
}

int run_report(const std::string& run_file, const std::string& format,
               const std::string& out_file) {
    auto run = pk::report::load_run_file(run_file);
    std::string rendered =
        format == "json" ? pk::report::render_json(run) : pk::report::render_markdown(run);
    if (out_file.empty())
        std::cout << rendered;
    else
        pk::report::write_file_atomic(out_file, rendered);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Questionnaire pretesting toolkit: deterministic lint rules, LLM pretest "
                 "protocols with record/replay, and AI-vs-expert comparison"};
    app.set_config("--config", "pretest.toml", "Key/value config file; flags override it");
    app.require_subcommand(1);

    CommonOptions common;
    app.add_option("--lexicons", common.lexicon_dir, "Lexicon directory")
        ->capture_default_str();
    app.add_option("--keywords", common.keywords_file,
                   "Suggestion keyword-family table (default: built-in)");
    app.add_option("--mapping", common.mapping_file,
                   "Finding-to-suggestion kind mapping (default: built-in)");
    app.add_option("--base-url", common.base_url, "Chat-completion endpoint base URL")
        ->capture_default_str();
    app.add_option("--model", common.model, "Model identifier")->capture_default_str();
    app.add_option("--temperature", common.temperature, "Sampling temperature")
        ->capture_default_str();
    app.add_option("--max-tokens", common.max_tokens, "Completion token cap")
        ->capture_default_str();
    app.add_option("--concurrency", common.concurrency, "Max in-flight live requests")
        ->capture_default_str();

    auto* lint_cmd = app.add_subcommand("lint", "Run the deterministic rules over a questionnaire");
    std::string lint_file;
    bool strict = false;
    std::string lint_format = "text";
    std::vector<std::string> disabled;
    lint_cmd->add_option("file", lint_file, "Questionnaire file")->required();
    lint_cmd->add_flag("--strict", strict, "Exit 1 when any warning-level finding fires");
    lint_cmd->add_option("--format", lint_format, "text|json")->capture_default_str();
    lint_cmd->add_option("--disable", disabled, "Rule ids to disable (repeatable)");

    auto* pretest_cmd = app.add_subcommand("pretest", "Full pipeline: lint, prompt, complete, "
                                                      "parse, adjudicate, report");
    std::string pretest_file, level, profile, mode, transcripts, out_dir, run_id, timestamp;
    bool include_mode_sentence = false;
    pretest_cmd->add_option("file", pretest_file, "Questionnaire file")->required();
    pretest_cmd->add_option("--level", level, "1|2|3|4|roleplay")->required();
    pretest_cmd->add_option("--profile", profile, "Role-play respondent profile text");
    pretest_cmd->add_option("--mode", mode, "live|record|replay")->required();
    pretest_cmd->add_option("--transcripts", transcripts, "Transcript store path");
    pretest_cmd->add_option("--out", out_dir, "Report output directory (default: .)");
    pretest_cmd->add_option("--run-id", run_id, "Report basename (default: content digest)");
    pretest_cmd->add_option("--timestamp", timestamp,
                            "Fixed ISO-8601 envelope timestamp (default: now)");
    pretest_cmd->add_flag("--mode-sentence", include_mode_sentence,
                          "Insert the survey-mode sentence into level 3-4 prompts");

    auto* compare_cmd = app.add_subcommand("compare", "Diff AI and expert proposals against the "
                                                      "original question");
    std::string compare_file, question_id, ai_file, expert_file;
    compare_cmd->add_option("file", compare_file, "Questionnaire file")->required();
    compare_cmd->add_option("--question", question_id, "Question id (default: first)");
    compare_cmd->add_option("--ai", ai_file, "AI proposal text file")->required();
    compare_cmd->add_option("--expert", expert_file, "Expert proposal text file")->required();

    auto* report_cmd = app.add_subcommand("report", "Re-render a saved run");
    std::string report_file, report_format = "md", report_out;
    report_cmd->add_option("run", report_file, "Saved .report.json file")->required();
    report_cmd->add_option("--format", report_format, "md|json")->capture_default_str();
    report_cmd->add_option("--out", report_out, "Write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (lint_cmd->parsed())
            return run_lint(lint_file, common, disabled, strict, lint_format);
        if (pretest_cmd->parsed())
            return run_pretest(pretest_file, common, level, profile, mode, transcripts, out_dir,
                               run_id, timestamp, include_mode_sentence);
        if (compare_cmd->parsed())
            return run_compare(compare_file, common, question_id, ai_file, expert_file);
        if (report_cmd->parsed()) return run_report(report_file, report_format, report_out);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    } catch (const pk::Error& e) {
        std::cerr << "error [" << pk::to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

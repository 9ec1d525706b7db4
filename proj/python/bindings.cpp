#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pretestkit/compare.hpp"
#include "pretestkit/error.hpp"
#include "pretestkit/feedback.hpp"
#include "pretestkit/lint.hpp"
#include "pretestkit/llmclient.hpp"
#include "pretestkit/prompt.hpp"
#include "pretestkit/qmodel.hpp"
#include "pretestkit/report.hpp"
#include "pretestkit/scale.hpp"
#include "pretestkit/version.hpp"

namespace py = pybind11;
using namespace pretestkit;

namespace {

qmodel::QuestionKind kind_from_str(const std::string& s) {
    return qmodel::question_kind_from_string(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Questionnaire pretesting toolkit: deterministic lint rules, pretest prompt "
              "protocols with record/replay, and AI-vs-expert comparison";
    m.attr("__version__") = kVersion;

    static py::exception<Error> exc(m, "PretestError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    // --- questionnaire model ---
    py::class_<qmodel::StudyMeta>(m, "StudyMeta")
        .def(py::init([](std::optional<std::string> aim, std::string mode,
                         std::optional<std::string> population) {
                 qmodel::StudyMeta meta;
                 meta.aim = std::move(aim);
                 meta.mode = qmodel::survey_mode_from_string(mode);
                 meta.population = std::move(population);
                 return meta;
             }),
             py::arg("aim") = std::nullopt, py::arg("mode") = "unspecified",
             py::arg("population") = std::nullopt)
        .def_readwrite("aim", &qmodel::StudyMeta::aim)
        .def_readwrite("population", &qmodel::StudyMeta::population)
        .def_property(
            "mode", [](const qmodel::StudyMeta& s) { return std::string(to_string(s.mode)); },
            [](qmodel::StudyMeta& s, const std::string& v) {
                s.mode = qmodel::survey_mode_from_string(v);
            });

    py::class_<qmodel::Question>(m, "Question")
        .def(py::init([](std::string id, std::string stem, std::string kind,
                         std::vector<std::string> categories) {
                 qmodel::Question q;
                 q.id = std::move(id);
                 q.stem = std::move(stem);
                 q.kind = kind_from_str(kind);
                 q.categories = std::move(categories);
                 return q;
             }),
             py::arg("id"), py::arg("stem"), py::arg("kind") = "other",
             py::arg("categories") = std::vector<std::string>{})
        .def_readwrite("id", &qmodel::Question::id)
        .def_readwrite("stem", &qmodel::Question::stem)
        .def_readwrite("categories", &qmodel::Question::categories)
        .def_property(
            "kind", [](const qmodel::Question& q) { return std::string(to_string(q.kind)); },
            [](qmodel::Question& q, const std::string& v) { q.kind = kind_from_str(v); })
        .def("__repr__", [](const qmodel::Question& q) {
            return "<Question " + q.id + ": " + q.stem.substr(0, 40) + "...>";
        });

    py::class_<qmodel::Questionnaire>(m, "Questionnaire")
        .def(py::init<>())
        .def_readwrite("meta", &qmodel::Questionnaire::meta)
        .def_readwrite("questions", &qmodel::Questionnaire::questions)
        .def("__eq__", [](const qmodel::Questionnaire& a, const qmodel::Questionnaire& b) {
            return a == b;
        });

    py::class_<qmodel::StructuralIssue>(m, "StructuralIssue")
        .def_readonly("question_id", &qmodel::StructuralIssue::question_id)
        .def_readonly("message", &qmodel::StructuralIssue::message);

    m.def("parse_questionnaire", &qmodel::parse_questionnaire, py::arg("document"));
    m.def("serialize_questionnaire", &qmodel::serialize_questionnaire, py::arg("questionnaire"));
    m.def("validate_structure", &qmodel::validate_structure, py::arg("questionnaire"));
    m.def("load_questionnaire_file", &qmodel::load_questionnaire_file, py::arg("path"));

    // --- scale analysis ---
    py::class_<scale::FrequencyInterval>(m, "FrequencyInterval")
        .def("__str__", &scale::FrequencyInterval::str)
        .def_property_readonly("lo",
                               [](const scale::FrequencyInterval& iv) {
                                   return double(iv.lo.num) / double(iv.lo.den);
                               })
        .def_property_readonly("hi",
                               [](const scale::FrequencyInterval& iv) -> std::optional<double> {
                                   if (!iv.hi) return std::nullopt;
                                   return double(iv.hi->num) / double(iv.hi->den);
                               })
        .def_readonly("lo_inclusive", &scale::FrequencyInterval::lo_inclusive)
        .def_readonly("hi_inclusive", &scale::FrequencyInterval::hi_inclusive);

    py::class_<scale::ScaleFinding>(m, "ScaleFinding")
        .def_property_readonly(
            "kind", [](const scale::ScaleFinding& f) { return std::string(to_string(f.kind)); })
        .def_readonly("detail", &scale::ScaleFinding::detail)
        .def_readonly("category_indices", &scale::ScaleFinding::category_indices)
        .def("__repr__", [](const scale::ScaleFinding& f) {
            return "<ScaleFinding " + std::string(to_string(f.kind)) + ">";
        });

    py::class_<scale::ScaleAnalysis>(m, "ScaleAnalysis")
        .def_readonly("findings", &scale::ScaleAnalysis::findings)
        .def_property_readonly("intervals", [](const scale::ScaleAnalysis& a) {
            std::vector<std::optional<std::string>> out;
            for (const auto& iv : a.intervals)
                out.push_back(iv ? std::optional<std::string>(iv->str()) : std::nullopt);
            return out;
        });

    m.def(
        "parse_category_interval",
        [](const std::string& label) { return scale::parse_category_interval(label); },
        py::arg("label"));
    m.def(
        "analyze_scale",
        [](const std::vector<std::string>& labels, const std::string& kind) {
            return scale::analyze_scale(labels, kind_from_str(kind));
        },
        py::arg("labels"), py::arg("kind") = "closed-frequency");

    // --- lint ---
    py::class_<lint::Finding>(m, "Finding")
        .def_property_readonly(
            "rule", [](const lint::Finding& f) { return std::string(to_string(f.rule)); })
        .def_property_readonly(
            "severity", [](const lint::Finding& f) { return std::string(to_string(f.severity)); })
        .def_readonly("message", &lint::Finding::message)
        .def_readonly("evidence", &lint::Finding::evidence)
        .def_readonly("subkind", &lint::Finding::subkind)
        .def_readonly("hint", &lint::Finding::hint)
        .def_property_readonly("span_start",
                               [](const lint::Finding& f) { return f.span.start; })
        .def_property_readonly("span_end", [](const lint::Finding& f) { return f.span.end; })
        .def_property_readonly("target",
                               [](const lint::Finding& f) {
                                   return f.span.target == qmodel::SourceSpan::Target::Stem
                                              ? std::string("stem")
                                              : "category:" +
                                                    std::to_string(f.span.category_index);
                               })
        .def("__repr__", [](const lint::Finding& f) { return "<" + lint::format_finding(f) + ">"; });

    py::class_<lint::Context>(m, "LintContext")
        .def_static(
            "load",
            [](const std::string& lexicon_dir) {
                lint::LintConfig cfg;
                cfg.lexicon_dir = lexicon_dir;
                return lint::Context::load(std::move(cfg));
            },
            py::arg("lexicon_dir") = "lexicons");

    m.def(
        "lint_question",
        [](const qmodel::Question& q, const qmodel::StudyMeta& meta, const lint::Context& ctx) {
            return lint::lint_question(q, meta, ctx);
        },
        py::arg("question"), py::arg("meta"), py::arg("context"));
    m.def("format_finding", &lint::format_finding, py::arg("finding"));

    // --- prompts ---
    py::class_<prompt::PromptSpec>(m, "PromptSpec")
        .def_readonly("text", &prompt::PromptSpec::text)
        .def_readonly("question_id", &prompt::PromptSpec::question_id)
        .def_readonly("digest", &prompt::PromptSpec::digest)
        .def_property_readonly("level", [](const prompt::PromptSpec& p) {
            return std::string(to_string(p.level.level));
        });

    m.def("render_question_block", &prompt::render_question_block, py::arg("question"));
    m.def(
        "build_prompt",
        [](const std::string& level, const qmodel::Question& q, const qmodel::StudyMeta& meta,
           const std::string& profile) {
            prompt::PromptLevel pl;
            if (level == "1" || level == "task-only")
                pl.level = prompt::Level::TaskOnly;
            else if (level == "2" || level == "task-aim")
                pl.level = prompt::Level::TaskAim;
            else if (level == "3" || level == "task-aim-population")
                pl.level = prompt::Level::TaskAimPopulation;
            else if (level == "4" || level == "task-aim-population-principles")
                pl.level = prompt::Level::TaskAimPopulationPrinciples;
            else if (level == "roleplay" && profile.empty())
                pl.level = prompt::Level::RolePlayGeneral;
            else if (level == "roleplay")
                pl.level = prompt::Level::RolePlayProfile;
            else
                throw Error(ErrorCode::MalformedDocument, "unknown prompt level '" + level + "'");
            pl.profile = profile;
            return prompt::build_prompt(pl, q, meta);
        },
        py::arg("level"), py::arg("question"), py::arg("meta"), py::arg("profile") = "");
    m.def("principle_catalog", [] {
        const auto& arr = prompt::principle_catalog();
        return std::vector<std::string>(arr.begin(), arr.end());
    });

    // --- llm client (replay-oriented surface) ---
    py::class_<llm::Transcript>(m, "Transcript")
        .def(py::init<>())
        .def_static("load_file", &llm::Transcript::load_file, py::arg("path"))
        .def("save_file", &llm::Transcript::save_file, py::arg("path"))
        .def("size", &llm::Transcript::size)
        .def(
            "put",
            [](llm::Transcript& t, const std::string& prompt_text, const std::string& response) {
                t.put({prompt_text, {}}, response, llm::iso8601_now());
            },
            py::arg("prompt"), py::arg("response"))
        .def(
            "replay",
            [](const llm::Transcript& t, const std::string& prompt_text) {
                llm::LlmClient client({}, llm::ClientMode::Replay,
                                      const_cast<llm::Transcript*>(&t));
                return client.complete({prompt_text, {}}).text;
            },
            py::arg("prompt"), "Replay the stored response for a prompt at default parameters");

    m.def(
        "request_digest",
        [](const std::string& prompt_text, const std::string& model, double temperature,
           int max_tokens) {
            return llm::request_digest({prompt_text, {model, temperature, max_tokens}});
        },
        py::arg("prompt"), py::arg("model") = "gpt-4", py::arg("temperature") = 0.7,
        py::arg("max_tokens") = 1024);

    // --- feedback ---
    py::class_<feedback::Suggestion>(m, "Suggestion")
        .def_readonly("index", &feedback::Suggestion::index)
        .def_readonly("title", &feedback::Suggestion::title)
        .def_readonly("body", &feedback::Suggestion::body)
        .def_property_readonly(
            "kind",
            [](const feedback::Suggestion& s) { return std::string(to_string(s.kind)); })
        .def("__repr__", [](const feedback::Suggestion& s) {
            return "<Suggestion " + std::to_string(s.index) + " " +
                   std::string(to_string(s.kind)) + ">";
        });

    py::class_<feedback::PretestFeedback>(m, "PretestFeedback")
        .def_readonly("suggestions", &feedback::PretestFeedback::suggestions)
        .def_readonly("revised_stem", &feedback::PretestFeedback::revised_stem)
        .def_readonly("revised_categories", &feedback::PretestFeedback::revised_categories)
        .def_readonly("raw", &feedback::PretestFeedback::raw);

    m.def(
        "parse_feedback",
        [](const std::string& raw) { return feedback::parse_feedback(raw); }, py::arg("raw"));
    m.def(
        "classify_suggestion",
        [](const std::optional<std::string>& title, const std::string& body) {
            return std::string(to_string(feedback::classify_suggestion(title, body)));
        },
        py::arg("title"), py::arg("body"));

    // --- compare ---
    py::class_<compare::EditOp>(m, "EditOp")
        .def_property_readonly(
            "kind", [](const compare::EditOp& op) { return std::string(to_string(op.kind)); })
        .def_property_readonly(
            "semantic",
            [](const compare::EditOp& op) { return std::string(to_string(op.semantic)); })
        .def_readonly("old_tokens", &compare::EditOp::old_tokens)
        .def_readonly("new_tokens", &compare::EditOp::new_tokens)
        .def_readonly("old_start", &compare::EditOp::old_start)
        .def_readonly("old_end", &compare::EditOp::old_end)
        .def("__repr__", [](const compare::EditOp& op) {
            return "<EditOp " + std::string(to_string(op.kind)) + "/" +
                   std::string(to_string(op.semantic)) + ">";
        });

    py::class_<compare::RevisionDiff>(m, "RevisionDiff")
        .def_readonly("edits", &compare::RevisionDiff::edits)
        .def_readonly("original_tokens", &compare::RevisionDiff::original_tokens)
        .def_readonly("revised_tokens", &compare::RevisionDiff::revised_tokens);

    py::class_<compare::MatchedEdit>(m, "MatchedEdit")
        .def_readonly("ai", &compare::MatchedEdit::ai)
        .def_readonly("expert", &compare::MatchedEdit::expert);

    py::class_<compare::AgreementReport>(m, "AgreementReport")
        .def_readonly("shared", &compare::AgreementReport::shared)
        .def_readonly("ai_only", &compare::AgreementReport::ai_only)
        .def_readonly("expert_only", &compare::AgreementReport::expert_only);

    py::class_<compare::JudgmentItem>(m, "JudgmentItem")
        .def_property_readonly(
            "status",
            [](const compare::JudgmentItem& j) { return std::string(to_string(j.status)); })
        .def_readonly("suggestion_index", &compare::JudgmentItem::suggestion_index)
        .def_readonly("finding_indices", &compare::JudgmentItem::finding_indices)
        .def_readonly("note", &compare::JudgmentItem::note);

    m.def("diff_revision", &compare::diff_revision, py::arg("original"), py::arg("revised"));
    m.def("compare_proposals", &compare::compare_proposals, py::arg("original"), py::arg("ai"),
          py::arg("expert"));
    m.def(
        "cross_check",
        [](const std::vector<lint::Finding>& findings, const feedback::PretestFeedback& fb) {
            return compare::cross_check(findings, fb);
        },
        py::arg("findings"), py::arg("feedback"));
}

#include "pretestkit/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pretestkit/error.hpp"

namespace pretestkit::report {

using nlohmann::json;

namespace {

json span_to_json(const qmodel::SourceSpan& span) {
    json j;
    j["target"] = span.target == qmodel::SourceSpan::Target::Stem ? "stem" : "category";
    if (span.target == qmodel::SourceSpan::Target::Category)
        j["category_index"] = span.category_index;
    j["start"] = span.start;
    j["end"] = span.end;
    return j;
}

qmodel::SourceSpan span_from_json(const json& j) {
    qmodel::SourceSpan span;
    span.target = j.at("target").get<std::string>() == "stem"
                      ? qmodel::SourceSpan::Target::Stem
                      : qmodel::SourceSpan::Target::Category;
    span.category_index = j.value("category_index", std::size_t{0});
    span.start = j.at("start").get<std::size_t>();
    span.end = j.at("end").get<std::size_t>();
    return span;
}

json finding_to_json(const lint::Finding& f) {
    json j;
    j["rule"] = lint::to_string(f.rule);
    j["severity"] = lint::to_string(f.severity);
    j["span"] = span_to_json(f.span);
    j["message"] = f.message;
    j["evidence"] = f.evidence;
    if (f.subkind) j["subkind"] = *f.subkind;
    if (f.hint) j["hint"] = *f.hint;
    return j;
}

lint::Finding finding_from_json(const json& j) {
    lint::Finding f;
    auto rule = lint::rule_from_string(j.at("rule").get<std::string>());
    if (!rule) throw Error(ErrorCode::MalformedDocument, "unknown rule id in run document");
    f.rule = *rule;
    std::string sev = j.at("severity").get<std::string>();
    f.severity = sev == "error" ? lint::Severity::Error
                 : sev == "info" ? lint::Severity::Info
                                 : lint::Severity::Warning;
    f.span = span_from_json(j.at("span"));
    f.message = j.at("message").get<std::string>();
    f.evidence = j.at("evidence").get<std::vector<std::string>>();
    if (j.contains("subkind")) f.subkind = j["subkind"].get<std::string>();
    if (j.contains("hint")) f.hint = j["hint"].get<std::string>();
    return f;
}

json prompt_to_json(const prompt::PromptSpec& p) {
    json j;
    j["level"] = prompt::to_string(p.level.level);
    if (p.level.level == prompt::Level::RolePlayProfile) j["profile"] = p.level.profile;
    j["text"] = p.text;
    j["question_id"] = p.question_id;
    j["digest"] = p.digest;
    return j;
}

prompt::PromptSpec prompt_from_json(const json& j) {
    prompt::PromptSpec p;
    std::string level = j.at("level").get<std::string>();
    for (auto l : {prompt::Level::TaskOnly, prompt::Level::TaskAim,
                   prompt::Level::TaskAimPopulation, prompt::Level::TaskAimPopulationPrinciples,
                   prompt::Level::RolePlayGeneral, prompt::Level::RolePlayProfile}) {
        if (level == prompt::to_string(l)) p.level.level = l;
    }
    p.level.profile = j.value("profile", "");
    p.text = j.at("text").get<std::string>();
    p.question_id = j.at("question_id").get<std::string>();
    p.digest = j.at("digest").get<std::string>();
    return p;
}

json feedback_to_json(const feedback::PretestFeedback& fb) {
    json j;
    j["raw"] = fb.raw;
    j["suggestions"] = json::array();
    for (const auto& s : fb.suggestions) {
        json js;
        js["index"] = s.index;
        if (s.title) js["title"] = *s.title;
        js["body"] = s.body;
        js["kind"] = feedback::to_string(s.kind);
        js["span_start"] = s.span_start;
        js["span_end"] = s.span_end;
        j["suggestions"].push_back(std::move(js));
    }
    if (fb.revised_stem) j["revised_stem"] = *fb.revised_stem;
    if (fb.revised_categories) j["revised_categories"] = *fb.revised_categories;
    if (fb.revision_span)
        j["revision_span"] = json::array({fb.revision_span->first, fb.revision_span->second});
    return j;
}

feedback::PretestFeedback feedback_from_json(const json& j) {
    feedback::PretestFeedback fb;
    fb.raw = j.at("raw").get<std::string>();
    for (const json& js : j.at("suggestions")) {
        feedback::Suggestion s;
        s.index = js.at("index").get<std::size_t>();
        if (js.contains("title")) s.title = js["title"].get<std::string>();
        s.body = js.at("body").get<std::string>();
        auto kind = feedback::suggestion_kind_from_string(js.at("kind").get<std::string>());
        s.kind = kind.value_or(feedback::SuggestionKind::Other);
        s.span_start = js.at("span_start").get<std::size_t>();
        s.span_end = js.at("span_end").get<std::size_t>();
        fb.suggestions.push_back(std::move(s));
    }
    if (j.contains("revised_stem")) fb.revised_stem = j["revised_stem"].get<std::string>();
    if (j.contains("revised_categories"))
        fb.revised_categories = j["revised_categories"].get<std::vector<std::string>>();
    if (j.contains("revision_span"))
        fb.revision_span = {j["revision_span"][0].get<std::size_t>(),
                            j["revision_span"][1].get<std::size_t>()};
    return fb;
}

json edit_to_json(const compare::EditOp& op) {
    json j;
    j["kind"] = compare::to_string(op.kind);
    j["semantic"] = compare::to_string(op.semantic);
    j["old_tokens"] = op.old_tokens;
    j["new_tokens"] = op.new_tokens;
    j["old_start"] = op.old_start;
    j["old_end"] = op.old_end;
    j["new_start"] = op.new_start;
    j["new_end"] = op.new_end;
    return j;
}

compare::EditOp edit_from_json(const json& j) {
    compare::EditOp op;
    std::string kind = j.at("kind").get<std::string>();
    op.kind = kind == "Insert" ? compare::EditKind::Insert
              : kind == "Delete" ? compare::EditKind::Delete
                                 : compare::EditKind::Replace;
    std::string sem = j.at("semantic").get<std::string>();
    for (auto s : {compare::EditSemantic::TermReplacement, compare::EditSemantic::TimeframeChange,
                   compare::EditSemantic::ExemplificationAdded,
                   compare::EditSemantic::CategoryChange, compare::EditSemantic::Rewording}) {
        if (sem == compare::to_string(s)) op.semantic = s;
    }
    op.old_tokens = j.at("old_tokens").get<std::vector<std::string>>();
    op.new_tokens = j.at("new_tokens").get<std::vector<std::string>>();
    op.old_start = j.at("old_start").get<std::size_t>();
    op.old_end = j.at("old_end").get<std::size_t>();
    op.new_start = j.at("new_start").get<std::size_t>();
    op.new_end = j.at("new_end").get<std::size_t>();
    return op;
}

json diff_to_json(const compare::RevisionDiff& d) {
    json j;
    j["original"] = d.original;
    j["revised"] = d.revised;
    j["original_tokens"] = d.original_tokens;
    j["revised_tokens"] = d.revised_tokens;
    j["edits"] = json::array();
    for (const auto& op : d.edits) j["edits"].push_back(edit_to_json(op));
    return j;
}

compare::RevisionDiff diff_from_json(const json& j) {
    compare::RevisionDiff d;
    d.original = j.at("original").get<std::string>();
    d.revised = j.at("revised").get<std::string>();
    d.original_tokens = j.at("original_tokens").get<std::vector<std::string>>();
    d.revised_tokens = j.at("revised_tokens").get<std::vector<std::string>>();
    for (const json& je : j.at("edits")) d.edits.push_back(edit_from_json(je));
    return d;
}

json agreement_to_json(const compare::AgreementReport& a) {
    json j;
    j["shared"] = json::array();
    for (const auto& m : a.shared)
        j["shared"].push_back({{"ai", edit_to_json(m.ai)}, {"expert", edit_to_json(m.expert)}});
    j["ai_only"] = json::array();
    for (const auto& op : a.ai_only) j["ai_only"].push_back(edit_to_json(op));
    j["expert_only"] = json::array();
    for (const auto& op : a.expert_only) j["expert_only"].push_back(edit_to_json(op));
    return j;
}

compare::AgreementReport agreement_from_json(const json& j) {
    compare::AgreementReport a;
    for (const json& jm : j.at("shared"))
        a.shared.push_back({edit_from_json(jm.at("ai")), edit_from_json(jm.at("expert"))});
    for (const json& je : j.at("ai_only")) a.ai_only.push_back(edit_from_json(je));
    for (const json& je : j.at("expert_only")) a.expert_only.push_back(edit_from_json(je));
    return a;
}

json judgment_to_json(const compare::JudgmentItem& item) {
    json j;
    j["status"] = compare::to_string(item.status);
    if (item.suggestion_index) j["suggestion_index"] = *item.suggestion_index;
    j["finding_indices"] = item.finding_indices;
    j["note"] = item.note;
    return j;
}

compare::JudgmentItem judgment_from_json(const json& j) {
    compare::JudgmentItem item;
    std::string status = j.at("status").get<std::string>();
    item.status = status == "ConfirmedByLint" ? compare::JudgmentStatus::ConfirmedByLint
                  : status == "MissedByAI"    ? compare::JudgmentStatus::MissedByAI
                                              : compare::JudgmentStatus::UnsupportedByLint;
    if (j.contains("suggestion_index"))
        item.suggestion_index = j["suggestion_index"].get<std::size_t>();
    item.finding_indices = j.at("finding_indices").get<std::vector<std::size_t>>();
    item.note = j.at("note").get<std::string>();
    return item;
}

json questionnaire_to_json(const qmodel::Questionnaire& q) {
    json meta = json::object();
    if (q.meta.aim) meta["aim"] = *q.meta.aim;
    meta["mode"] = qmodel::to_string(q.meta.mode);
    if (q.meta.population) meta["population"] = *q.meta.population;
    json questions = json::array();
    for (const auto& question : q.questions) {
        questions.push_back({{"id", question.id},
                             {"stem", question.stem},
                             {"kind", qmodel::to_string(question.kind)},
                             {"categories", question.categories}});
    }
    return {{"meta", meta}, {"questions", questions}};
}

qmodel::Questionnaire questionnaire_from_json(const json& j) {
    qmodel::Questionnaire q;
    const json& meta = j.at("meta");
    if (meta.contains("aim")) q.meta.aim = meta["aim"].get<std::string>();
    q.meta.mode = qmodel::survey_mode_from_string(meta.at("mode").get<std::string>());
    if (meta.contains("population")) q.meta.population = meta["population"].get<std::string>();
    for (const json& jq : j.at("questions")) {
        qmodel::Question question;
        question.id = jq.at("id").get<std::string>();
        question.stem = jq.at("stem").get<std::string>();
        question.kind = qmodel::question_kind_from_string(jq.at("kind").get<std::string>());
        question.categories = jq.at("categories").get<std::vector<std::string>>();
        q.questions.push_back(std::move(question));
    }
    return q;
}

}  // namespace

std::string render_json(const PretestRun& run) {
    json body;
    body["run_id"] = run.run_id;
    body["version"] = run.tool_version;
    body["questionnaire"] = questionnaire_to_json(run.questionnaire);
    body["transcript_digests"] = run.transcript_digests;
    json records = json::object();
    for (const auto& rec : run.records) {
        json jr;
        jr["findings"] = json::array();
        for (const auto& f : rec.findings) jr["findings"].push_back(finding_to_json(f));
        jr["prompts"] = json::array();
        for (const auto& p : rec.prompts) jr["prompts"].push_back(prompt_to_json(p));
        jr["feedbacks"] = json::array();
        for (const auto& fb : rec.feedbacks) jr["feedbacks"].push_back(feedback_to_json(fb));
        jr["diffs"] = json::array();
        for (const auto& d : rec.diffs) jr["diffs"].push_back(diff_to_json(d));
        if (rec.agreement) jr["agreement"] = agreement_to_json(*rec.agreement);
        jr["judgments"] = json::array();
        for (const auto& item : rec.judgments) jr["judgments"].push_back(judgment_to_json(item));
        records[rec.question_id] = std::move(jr);
    }
    body["questions"] = std::move(records);

    json doc;
    doc["envelope"] = {{"generated_at", run.generated_at}};
    doc["run"] = std::move(body);
    return doc.dump(2) + "\n";
}

PretestRun parse_run(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("run document: ") + e.what());
    }
    PretestRun run;
    run.generated_at = doc.at("envelope").value("generated_at", "");
    const json& body = doc.at("run");
    run.run_id = body.at("run_id").get<std::string>();
    run.tool_version = body.at("version").get<std::string>();
    run.questionnaire = questionnaire_from_json(body.at("questionnaire"));
    run.transcript_digests = body.at("transcript_digests").get<std::vector<std::string>>();
    // Keep question order from the questionnaire, not JSON key order.
    for (const auto& question : run.questionnaire.questions) {
        if (!body.at("questions").contains(question.id)) continue;
        const json& jr = body["questions"][question.id];
        QuestionRecord rec;
        rec.question_id = question.id;
        for (const json& jf : jr.at("findings")) rec.findings.push_back(finding_from_json(jf));
        for (const json& jp : jr.at("prompts")) rec.prompts.push_back(prompt_from_json(jp));
        for (const json& jf : jr.at("feedbacks")) rec.feedbacks.push_back(feedback_from_json(jf));
        for (const json& jd : jr.at("diffs")) rec.diffs.push_back(diff_from_json(jd));
        if (jr.contains("agreement")) rec.agreement = agreement_from_json(jr["agreement"]);
        for (const json& ji : jr.at("judgments")) rec.judgments.push_back(judgment_from_json(ji));
        run.records.push_back(std::move(rec));
    }
    return run;
}

PretestRun load_run_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open run file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run(buf.str());
}

namespace {

std::string md_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '|')
            out += "\\|";
        else if (c == '\n')
            out += "<br>";
        else
            out.push_back(c);
    }
    return out;
}

std::string join_tokens(const std::vector<std::string>& toks) {
    std::string out;
    for (std::size_t i = 0; i < toks.size(); ++i) out += (i ? " " : "") + toks[i];
    return out.empty() ? "(nothing)" : out;
}

std::string label_of(const feedback::Suggestion& s) {
    if (s.title) return *s.title;
    if (s.body.size() <= 80) return s.body;
    std::size_t cut = s.body.rfind(' ', 80);
    if (cut == std::string::npos || cut < 40) cut = 80;
    return s.body.substr(0, cut) + "...";
}

void render_edit_row(std::ostringstream& out, const compare::EditOp& op,
                     const std::string& who) {
    out << "| " << who << " | " << compare::to_string(op.kind) << " | "
        << compare::to_string(op.semantic) << " | " << md_escape(join_tokens(op.old_tokens))
        << " | " << md_escape(join_tokens(op.new_tokens)) << " |\n";
}

}  // namespace

std::string render_markdown(const PretestRun& run) {
    std::ostringstream out;
    out << "# Pretest report: " << run.run_id << "\n\n";
    out << "Tool version " << run.tool_version << ".\n";
    if (!run.transcript_digests.empty()) {
        out << "Replayable from transcript digests:\n";
        for (const auto& d : run.transcript_digests) out << "- `" << d << "`\n";
    }
    out << "\n";

    for (const auto& rec : run.records) {
        const qmodel::Question* q = run.questionnaire.find(rec.question_id);
        out << "## Question " << rec.question_id << "\n\n";
        if (q) {
            out << "> " << q->stem << "\n";
            if (!q->categories.empty()) {
                out << ">\n";
                for (std::size_t i = 0; i < q->categories.size(); ++i)
                    out << "> (" << (i + 1) << ") " << q->categories[i] << "\n";
            }
            out << "\n";
        }

        bool has_suggestions = false;
        for (const auto& fb : rec.feedbacks) has_suggestions |= !fb.suggestions.empty();
        if (rec.findings.empty() && !has_suggestions) {
            out << "No issues detected.\n\n";
            continue;
        }

        out << "### Deterministic findings\n\n";
        if (rec.findings.empty()) {
            out << "None.\n\n";
        } else {
            out << "| Rule | Severity | Where | Evidence | Message |\n";
            out << "| --- | --- | --- | --- | --- |\n";
            for (const auto& f : rec.findings) {
                std::string where =
                    f.span.target == qmodel::SourceSpan::Target::Stem
                        ? "stem"
                        : "category " + std::to_string(f.span.category_index + 1);
                out << "| " << compare::finding_key(f) << " | " << lint::to_string(f.severity)
                    << " | " << where << " | " << md_escape(join_tokens(f.evidence)) << " | "
                    << md_escape(f.message) << " |\n";
            }
            out << "\n";
        }

        if (has_suggestions) {
            out << "### AI suggestions\n\n";
            out << "| # | Kind | Suggestion |\n";
            out << "| --- | --- | --- |\n";
            for (const auto& fb : rec.feedbacks) {
                for (const auto& s : fb.suggestions) {
                    out << "| " << s.index << " | " << feedback::to_string(s.kind) << " | "
                        << md_escape(label_of(s)) << " |\n";
                }
            }
            out << "\n";
        }

        if (!rec.diffs.empty() || rec.agreement) {
            out << "### Proposal edits\n\n";
            out << "| Source | Op | Class | From | To |\n";
            out << "| --- | --- | --- | --- | --- |\n";
            for (const auto& d : rec.diffs)
                for (const auto& op : d.edits) render_edit_row(out, op, "ai");
            if (rec.agreement) {
                for (const auto& m : rec.agreement->shared) render_edit_row(out, m.ai, "shared");
                for (const auto& op : rec.agreement->ai_only) render_edit_row(out, op, "ai only");
                for (const auto& op : rec.agreement->expert_only)
                    render_edit_row(out, op, "expert only");
            }
            out << "\n";
        }

        std::vector<const compare::JudgmentItem*> triage;
        for (const auto& item : rec.judgments)
            if (item.status != compare::JudgmentStatus::ConfirmedByLint) triage.push_back(&item);
        if (!triage.empty()) {
            out << "### Researcher judgment queue\n\n";
            out << "AI advice is input, not verdict: review each entry before changing the "
                   "instrument.\n\n";
            for (const auto* item : triage) {
                out << "- **" << compare::to_string(item->status) << "**";
                if (item->suggestion_index) {
                    const feedback::Suggestion* s = nullptr;
                    for (const auto& fb : rec.feedbacks)
                        for (const auto& cand : fb.suggestions)
                            if (cand.index == *item->suggestion_index) s = &cand;
                    if (s) out << ": " << md_escape(label_of(*s));
                }
                for (auto fi : item->finding_indices) {
                    if (fi < rec.findings.size())
                        out << ": " << compare::finding_key(rec.findings[fi]) << " "
                            << md_escape(rec.findings[fi].message);
                }
                out << " — " << item->note << "\n";
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_findings_json(
    const std::vector<std::pair<std::string, std::vector<lint::Finding>>>& per_question) {
    json questions = json::object();
    for (const auto& [id, findings] : per_question) {
        json arr = json::array();
        for (const auto& f : findings) arr.push_back(finding_to_json(f));
        questions[id] = std::move(arr);
    }
    json doc = {{"questions", questions}};
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write file", tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "write failed", tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(ErrorCode::IoError, "rename failed: " + ec.message(), path);
    }
}

}  // namespace pretestkit::report

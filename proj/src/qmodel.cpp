#include "pretestkit/qmodel.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "pretestkit/error.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::qmodel {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& what, const std::string& where) {
    throw Error(ErrorCode::MalformedDocument, what, where);
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) malformed("unknown field '" + it.key() + "'", where);
    }
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) malformed(std::string("missing field '") + key + "'", where);
    if (!obj[key].is_string()) malformed(std::string("field '") + key + "' must be a string", where);
    return obj[key].get<std::string>();
}

std::optional<std::string> optional_trimmed(const json& obj, const char* key,
                                            const std::string& where) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_string()) malformed(std::string("field '") + key + "' must be a string", where);
    std::string value = text::trim(obj[key].get<std::string>());
    if (value.empty())
        malformed(std::string("field '") + key + "' must be non-empty when present", where);
    return value;
}

}  // namespace

const char* to_string(SurveyMode mode) {
    switch (mode) {
        case SurveyMode::SelfAdministeredWeb: return "self-administered-web";
        case SurveyMode::FaceToFace: return "face-to-face";
        case SurveyMode::Telephone: return "telephone";
        case SurveyMode::Paper: return "paper";
        case SurveyMode::Unspecified: return "unspecified";
    }
    return "unspecified";
}

const char* to_string(QuestionKind kind) {
    switch (kind) {
        case QuestionKind::ClosedFrequency: return "closed-frequency";
        case QuestionKind::ClosedAgreement: return "closed-agreement";
        case QuestionKind::Open: return "open";
        case QuestionKind::Other: return "other";
    }
    return "other";
}

SurveyMode survey_mode_from_string(const std::string& s) {
    if (s == "self-administered-web") return SurveyMode::SelfAdministeredWeb;
    if (s == "face-to-face") return SurveyMode::FaceToFace;
    if (s == "telephone") return SurveyMode::Telephone;
    if (s == "paper") return SurveyMode::Paper;
    if (s == "unspecified") return SurveyMode::Unspecified;
    throw Error(ErrorCode::MalformedDocument, "unknown survey mode '" + s + "'");
}

QuestionKind question_kind_from_string(const std::string& s) {
    if (s == "closed-frequency") return QuestionKind::ClosedFrequency;
    if (s == "closed-agreement") return QuestionKind::ClosedAgreement;
    if (s == "open") return QuestionKind::Open;
    if (s == "other") return QuestionKind::Other;
    throw Error(ErrorCode::MalformedDocument, "unknown question kind '" + s + "'");
}

const Question* Questionnaire::find(const std::string& id) const {
    for (const auto& q : questions)
        if (q.id == id) return &q;
    return nullptr;
}

Questionnaire parse_questionnaire(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        malformed(e.what(), "byte " + std::to_string(e.byte));
    }
    if (!doc.is_object()) malformed("top level must be an object", "document");
    reject_unknown_fields(doc, {"meta", "questions"}, "document");

    Questionnaire result;
    if (doc.contains("meta")) {
        const json& meta = doc["meta"];
        if (!meta.is_object()) malformed("'meta' must be an object", "meta");
        reject_unknown_fields(meta, {"aim", "mode", "population"}, "meta");
        result.meta.aim = optional_trimmed(meta, "aim", "meta");
        result.meta.population = optional_trimmed(meta, "population", "meta");
        if (meta.contains("mode")) {
            if (!meta["mode"].is_string()) malformed("'mode' must be a string", "meta");
            try {
                result.meta.mode = survey_mode_from_string(meta["mode"].get<std::string>());
            } catch (const Error& e) {
                malformed(e.what(), "meta.mode");
            }
        }
    }

    if (!doc.contains("questions")) malformed("missing field 'questions'", "document");
    if (!doc["questions"].is_array()) malformed("'questions' must be an array", "document");

    std::unordered_set<std::string> seen_ids;
    std::size_t index = 0;
    for (const json& jq : doc["questions"]) {
        const std::string where = "questions[" + std::to_string(index) + "]";
        if (!jq.is_object()) malformed("question must be an object", where);
        reject_unknown_fields(jq, {"id", "stem", "kind", "categories"}, where);

        Question q;
        q.id = require_string(jq, "id", where);
        if (text::trim(q.id).empty()) malformed("question id must be non-empty", where);
        if (!seen_ids.insert(text::fold(q.id)).second) {
            throw Error(ErrorCode::DuplicateQuestionId, "duplicate question id '" + q.id + "'",
                        where);
        }
        q.stem = require_string(jq, "stem", where);
        if (text::trim(q.stem).empty()) {
            throw Error(ErrorCode::EmptyStem, "question stem is empty", "question " + q.id);
        }
        try {
            q.kind = question_kind_from_string(require_string(jq, "kind", where));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::MalformedDocument && std::string(e.what()).starts_with("unknown"))
                malformed(e.what(), where + ".kind");
            throw;
        }
        if (jq.contains("categories")) {
            if (!jq["categories"].is_array()) malformed("'categories' must be an array", where);
            std::unordered_set<std::string> seen_labels;
            std::size_t cat_index = 0;
            for (const json& jc : jq["categories"]) {
                if (!jc.is_string())
                    malformed("category label must be a string",
                              where + ".categories[" + std::to_string(cat_index) + "]");
                std::string label = jc.get<std::string>();
                std::string key = text::fold(text::trim(label));
                if (key.empty())
                    malformed("category label must be non-empty",
                              where + ".categories[" + std::to_string(cat_index) + "]");
                if (!seen_labels.insert(key).second) {
                    throw Error(ErrorCode::DuplicateCategoryLabel,
                                "duplicate category label '" + label + "'", "question " + q.id);
                }
                q.categories.push_back(std::move(label));
                ++cat_index;
            }
        }
        result.questions.push_back(std::move(q));
        ++index;
    }
    return result;
}

std::string serialize_questionnaire(const Questionnaire& q) {
    ordered_json doc;
    ordered_json meta = ordered_json::object();
    if (q.meta.aim) meta["aim"] = *q.meta.aim;
    meta["mode"] = to_string(q.meta.mode);
    if (q.meta.population) meta["population"] = *q.meta.population;
    doc["meta"] = std::move(meta);
    doc["questions"] = ordered_json::array();
    for (const auto& question : q.questions) {
        ordered_json jq;
        jq["id"] = question.id;
        jq["stem"] = question.stem;
        jq["kind"] = to_string(question.kind);
        jq["categories"] = question.categories;
        doc["questions"].push_back(std::move(jq));
    }
    return doc.dump(2) + "\n";
}

std::vector<StructuralIssue> validate_structure(const Questionnaire& q) {
    std::vector<StructuralIssue> issues;
    if (!q.meta.aim) {
        issues.push_back({StructuralIssueCode::AimMissing, "",
                          "aim required for prompt levels 2-4"});
    }
    if (!q.meta.population) {
        issues.push_back({StructuralIssueCode::PopulationMissing, "",
                          "population required for prompt levels 3-4"});
    }
    for (const auto& question : q.questions) {
        bool closed = question.kind == QuestionKind::ClosedFrequency ||
                      question.kind == QuestionKind::ClosedAgreement;
        if (closed && question.categories.size() < 2) {
            issues.push_back({StructuralIssueCode::ClosedTooFewCategories, question.id,
                              "closed question needs >= 2 categories"});
        }
        if (question.kind == QuestionKind::Open && !question.categories.empty()) {
            issues.push_back({StructuralIssueCode::OpenWithCategories, question.id,
                              "open question should not list categories"});
        }
    }
    return issues;
}

Questionnaire load_questionnaire_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open questionnaire file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_questionnaire(buf.str());
}

}  // namespace pretestkit::qmodel

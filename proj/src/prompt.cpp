#include "pretestkit/prompt.hpp"

#include "pretestkit/error.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::prompt {

namespace {

constexpr const char* kTaskPreamble =
    "This is part of a questionnaire pretest. "
    "Provide feedback to improve the following question and its categories. ";

constexpr const char* kNoRevisionClose =
    "You do not need to give me a revised version, only the feedback: ";

constexpr const char* kPrinciplesLead =
    "In addition to general principles, you should consider taking into account the following: ";

constexpr const char* kRolePlayOpen = "We want to do a questionnaire pretest with you. Imagine you are ";

constexpr const char* kRolePlayGeneralAudience = "a participant from the general population";

constexpr const char* kRolePlayBody =
    " and evaluate the unambiguity and comprehensibility of the question. "
    "Less cognitive effort and ambiguity may reduce comprehension difficulties and response "
    "error. Then, provide an improved version at the end of your comment as an expert, but only "
    "if it can be improved. This is the question: ";

}  // namespace

const char* to_string(Level level) {
    switch (level) {
        case Level::TaskOnly: return "task-only";
        case Level::TaskAim: return "task-aim";
        case Level::TaskAimPopulation: return "task-aim-population";
        case Level::TaskAimPopulationPrinciples: return "task-aim-population-principles";
        case Level::RolePlayGeneral: return "roleplay";
        case Level::RolePlayProfile: return "roleplay-profile";
    }
    return "?";
}

std::string render_question_block(const qmodel::Question& q) {
    std::string out = q.stem;
    if (q.kind == qmodel::QuestionKind::Open || q.categories.empty()) return out;
    out += " ";
    for (std::size_t i = 0; i < q.categories.size(); ++i) {
        if (i) out += ", ";
        out += "(" + std::to_string(i + 1) + ") " + q.categories[i];
    }
    return out;
}

const std::array<std::string, 10>& principle_catalog() {
    static const std::array<std::string, 10> principles = {
        "avoid jargon, and abbreviations",
        "avoid ambiguity, confusion, and vagueness",
        "avoid emotional language and prestige bias",
        "avoid double-barreled questions",
        "avoid leading questions",
        "avoid asking questions that are beyond respondents' capabilities",
        "avoid false premises",
        "avoid asking about future intentions",
        "avoid double negatives",
        "avoid overlapping or unbalanced response categories",
    };
    return principles;
}

PromptSpec build_prompt(const PromptLevel& level, const qmodel::Question& q,
                        const qmodel::StudyMeta& meta, const PromptOptions& opts) {
    const std::string question = render_question_block(q);
    std::string out;

    auto require_aim = [&]() -> const std::string& {
        if (!meta.aim || text::is_blank(*meta.aim))
            throw Error(ErrorCode::MissingAim, "this prompt level needs the study aim",
                        "question " + q.id);
        return *meta.aim;
    };
    auto require_population = [&]() -> const std::string& {
        if (!meta.population || text::is_blank(*meta.population))
            throw Error(ErrorCode::MissingPopulation,
                        "this prompt level needs the target population", "question " + q.id);
        return *meta.population;
    };

    switch (level.level) {
        case Level::TaskOnly:
        case Level::TaskAim:
        case Level::TaskAimPopulation:
        case Level::TaskAimPopulationPrinciples: {
            out = kTaskPreamble;
            if (level.level != Level::TaskOnly) {
                out += "The study aims to " + require_aim() + ". ";
            }
            if (level.level == Level::TaskAimPopulation ||
                level.level == Level::TaskAimPopulationPrinciples) {
                out += "The population of the study is " + require_population() + ". ";
                if (opts.include_mode_sentence &&
                    meta.mode != qmodel::SurveyMode::Unspecified) {
                    out += std::string("The survey mode is ") + qmodel::to_string(meta.mode) +
                           ". ";
                }
            }
            if (level.level == Level::TaskAimPopulationPrinciples) {
                out += kPrinciplesLead;
                const auto& principles = principle_catalog();
                for (std::size_t i = 0; i < principles.size(); ++i) {
                    if (i) out += "; ";
                    out += principles[i];
                }
                out += ". ";
            }
            out += kNoRevisionClose + question;
            break;
        }
        case Level::RolePlayGeneral:
            out = std::string(kRolePlayOpen) + kRolePlayGeneralAudience + kRolePlayBody + question;
            break;
        case Level::RolePlayProfile: {
            if (text::is_blank(level.profile))
                throw Error(ErrorCode::EmptyProfile, "role-play profile must be non-empty");
            out = std::string(kRolePlayOpen) + level.profile + kRolePlayBody + question;
            break;
        }
    }

    PromptSpec spec;
    spec.level = level;
    spec.text = std::move(out);
    spec.question_id = q.id;
    spec.digest = llm::request_digest({spec.text, opts.params});
    return spec;
}

}  // namespace pretestkit::prompt

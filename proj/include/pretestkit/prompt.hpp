#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "pretestkit/llmclient.hpp"
#include "pretestkit/qmodel.hpp"

namespace pretestkit::prompt {

/// The six pretest protocols: four sequential context levels plus the
/// respondent role-play prompt and its population-profile variant.
enum class Level {
    TaskOnly,                     // level 1
    TaskAim,                      // level 2
    TaskAimPopulation,            // level 3
    TaskAimPopulationPrinciples,  // level 4
    RolePlayGeneral,
    RolePlayProfile,
};

const char* to_string(Level level);

struct PromptLevel {
    Level level = Level::TaskOnly;
    std::string profile;  // required, non-empty, for RolePlayProfile

    PromptLevel() = default;
    PromptLevel(Level l, std::string p = {}) : level(l), profile(std::move(p)) {}

    bool operator==(const PromptLevel&) const = default;
};

struct PromptOptions {
    // The survey-mode sentence is off by default: the sequential templates
    // carry aim and population only.
    bool include_mode_sentence = false;
    llm::ModelParams params;
};

struct PromptSpec {
    PromptLevel level;
    std::string text;
    std::string question_id;
    std::string digest;

    bool operator==(const PromptSpec&) const = default;
};

/// Inline question rendering: stem followed by " (1) a, (2) b, ...".
/// Open questions render the stem alone.
std::string render_question_block(const qmodel::Question& q);

/// Byte-exact template instantiation for the requested level. Throws
/// MissingAim / MissingPopulation / EmptyProfile when the level needs
/// context the meta does not carry.
PromptSpec build_prompt(const PromptLevel& level, const qmodel::Question& q,
                        const qmodel::StudyMeta& meta, const PromptOptions& opts = {});

/// The ten question-writing principles, verbatim, in canonical order.
const std::array<std::string, 10>& principle_catalog();

}  // namespace pretestkit::prompt

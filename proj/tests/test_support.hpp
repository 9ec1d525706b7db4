#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pretestkit/lint.hpp"
#include "pretestkit/qmodel.hpp"

#ifndef PRETESTKIT_SOURCE_DIR
#define PRETESTKIT_SOURCE_DIR "."
#endif

namespace testsupport {

inline std::filesystem::path repo_root() { return PRETESTKIT_SOURCE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing test input: ", p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Fixture text files end with one editor newline that is not part of the text.
inline std::string read_fixture_text(const std::string& rel) {
    std::string s = read_file(repo_root() / "fixtures" / rel);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

inline pretestkit::qmodel::Questionnaire load_fixture_questionnaire(const std::string& name) {
    return pretestkit::qmodel::parse_questionnaire(
        read_file(repo_root() / "fixtures" / name));
}

inline const pretestkit::lint::Context& lint_context() {
    static const pretestkit::lint::Context ctx = [] {
        pretestkit::lint::LintConfig cfg;
        cfg.lexicon_dir = repo_root() / "lexicons";
        return pretestkit::lint::Context::load(std::move(cfg));
    }();
    return ctx;
}

}  // namespace testsupport

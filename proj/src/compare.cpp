#include "pretestkit/compare.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "pretestkit/error.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::compare {

const char* to_string(EditKind kind) {
    switch (kind) {
        case EditKind::Replace: return "Replace";
        case EditKind::Insert: return "Insert";
        case EditKind::Delete: return "Delete";
    }
    return "?";
}

const char* to_string(EditSemantic semantic) {
    switch (semantic) {
        case EditSemantic::TermReplacement: return "TermReplacement";
        case EditSemantic::TimeframeChange: return "TimeframeChange";
        case EditSemantic::ExemplificationAdded: return "ExemplificationAdded";
        case EditSemantic::CategoryChange: return "CategoryChange";
        case EditSemantic::Rewording: return "Rewording";
    }
    return "?";
}

const char* to_string(JudgmentStatus status) {
    switch (status) {
        case JudgmentStatus::ConfirmedByLint: return "ConfirmedByLint";
        case JudgmentStatus::UnsupportedByLint: return "UnsupportedByLint";
        case JudgmentStatus::MissedByAI: return "MissedByAI";
    }
    return "?";
}

namespace {

bool contains_seq(const std::vector<std::string>& tokens,
                  std::initializer_list<const char*> seq) {
    std::size_t n = seq.size();
    if (tokens.size() < n) return false;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        bool ok = true;
        std::size_t k = 0;
        for (const char* w : seq) {
            if (tokens[i + k] != w) {
                ok = false;
                break;
            }
            ++k;
        }
        if (ok) return true;
    }
    return false;
}

bool is_number(const std::string& tok) {
    return !tok.empty() && std::all_of(tok.begin(), tok.end(),
                                       [](unsigned char c) { return std::isdigit(c); });
}

bool is_period_unit(const std::string& tok) {
    static const std::array<const char*, 8> units = {"day",   "days",   "week", "weeks",
                                                     "month", "months", "year", "years"};
    return std::find(units.begin(), units.end(), tok) != units.end();
}

// "last 4 weeks", "past month", "next year", "per week", "typical week" ...
bool mentions_reference_period(const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        bool anchor = t == "last" || t == "past" || t == "next" || t == "per" || t == "each" ||
                      t == "every" || t == "typical";
        if (!anchor) continue;
        std::size_t j = i + 1;
        if (j < tokens.size() && is_number(tokens[j])) ++j;
        if (j < tokens.size() && is_period_unit(tokens[j])) return true;
    }
    // A bare trailing unit after a number ("4 weeks") still reads as a period.
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
        if (is_number(tokens[i]) && is_period_unit(tokens[i + 1])) return true;
    return false;
}

EditSemantic classify_edit(const EditOp& op) {
    if (mentions_reference_period(op.old_tokens) || mentions_reference_period(op.new_tokens))
        return EditSemantic::TimeframeChange;
    if (contains_seq(op.new_tokens, {"such", "as"}) ||
        contains_seq(op.new_tokens, {"for", "example"}) ||
        contains_seq(op.new_tokens, {"e", "g"}))
        return EditSemantic::ExemplificationAdded;
    if (op.kind == EditKind::Replace && op.old_tokens.size() <= 3 && op.new_tokens.size() <= 3)
        return EditSemantic::TermReplacement;
    return EditSemantic::Rewording;
}

std::vector<EditOp> lcs_edits(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
    const std::size_t n = a.size(), m = b.size();
    // dp[i][j] = LCS length of suffixes a[i..], b[j..].
    std::vector<std::vector<std::uint32_t>> dp(n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            if (a[i] == b[j])
                dp[i][j] = dp[i + 1][j + 1] + 1;
            else
                dp[i][j] = std::max(dp[i + 1][j], dp[i][j + 1]);
        }
    }
    // Forward walk pairs the earliest possible matches, so a swapped term is
    // not absorbed into a later identical word.
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (a[i] == b[j] && dp[i][j] == dp[i + 1][j + 1] + 1) {
            matches.emplace_back(i, j);
            ++i;
            ++j;
        } else if (dp[i + 1][j] >= dp[i][j + 1]) {
            ++i;
        } else {
            ++j;
        }
    }
    matches.emplace_back(n, m);  // sentinel

    std::vector<EditOp> edits;
    std::size_t pi = 0, pj = 0;
    for (auto [mi, mj] : matches) {
        if (mi > pi || mj > pj) {
            EditOp op;
            op.old_start = pi;
            op.old_end = mi;
            op.new_start = pj;
            op.new_end = mj;
            op.old_tokens.assign(a.begin() + static_cast<long>(pi), a.begin() + static_cast<long>(mi));
            op.new_tokens.assign(b.begin() + static_cast<long>(pj), b.begin() + static_cast<long>(mj));
            if (op.old_tokens.empty())
                op.kind = EditKind::Insert;
            else if (op.new_tokens.empty())
                op.kind = EditKind::Delete;
            else
                op.kind = EditKind::Replace;
            op.semantic = classify_edit(op);
            edits.push_back(std::move(op));
        }
        pi = mi + 1;
        pj = mj + 1;
    }
    return edits;
}

}  // namespace

RevisionDiff diff_revision(const std::string& original, const std::string& revised) {
    RevisionDiff diff;
    diff.original = original;
    diff.revised = revised;
    diff.original_tokens = text::folded_tokens(original);
    diff.revised_tokens = text::folded_tokens(revised);
    diff.edits = lcs_edits(diff.original_tokens, diff.revised_tokens);
    return diff;
}

RevisionDiff diff_categories(const std::vector<std::string>& original,
                             const std::vector<std::string>& revised) {
    RevisionDiff diff;
    auto fold_all = [](const std::vector<std::string>& labels) {
        std::vector<std::string> out;
        out.reserve(labels.size());
        for (const auto& l : labels) out.push_back(text::fold(text::trim(l)));
        return out;
    };
    diff.original_tokens = fold_all(original);
    diff.revised_tokens = fold_all(revised);
    diff.edits = lcs_edits(diff.original_tokens, diff.revised_tokens);
    for (auto& op : diff.edits) op.semantic = EditSemantic::CategoryChange;
    return diff;
}

std::vector<std::string> apply_edits(const RevisionDiff& diff) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const EditOp& op : diff.edits) {
        while (i < op.old_start) out.push_back(diff.original_tokens[i++]);
        out.insert(out.end(), op.new_tokens.begin(), op.new_tokens.end());
        i = op.old_end;
    }
    while (i < diff.original_tokens.size()) out.push_back(diff.original_tokens[i++]);
    return out;
}

namespace {

bool spans_touch(const EditOp& a, const EditOp& b) {
    // Inserts are zero-width anchors; they touch a range they sit inside of
    // (boundaries included).
    if (a.old_start == a.old_end)
        return b.old_start <= a.old_start && a.old_start <= b.old_end;
    if (b.old_start == b.old_end)
        return a.old_start <= b.old_start && b.old_start <= a.old_end;
    return std::max(a.old_start, b.old_start) < std::min(a.old_end, b.old_end);
}

}  // namespace

AgreementReport compare_proposals(const std::string& original, const std::string& ai,
                                  const std::string& expert) {
    RevisionDiff ai_diff = diff_revision(original, ai);
    RevisionDiff expert_diff = diff_revision(original, expert);

    AgreementReport report;
    std::vector<bool> expert_claimed(expert_diff.edits.size(), false);
    for (const EditOp& ai_op : ai_diff.edits) {
        bool matched = false;
        for (std::size_t k = 0; k < expert_diff.edits.size(); ++k) {
            if (expert_claimed[k]) continue;
            const EditOp& ex_op = expert_diff.edits[k];
            if (ai_op.semantic == ex_op.semantic && spans_touch(ai_op, ex_op)) {
                report.shared.push_back({ai_op, ex_op});
                expert_claimed[k] = true;
                matched = true;
                break;
            }
        }
        if (!matched) report.ai_only.push_back(ai_op);
    }
    for (std::size_t k = 0; k < expert_diff.edits.size(); ++k)
        if (!expert_claimed[k]) report.expert_only.push_back(expert_diff.edits[k]);
    return report;
}

const KindMapping& KindMapping::builtin() {
    using feedback::SuggestionKind;
    static const KindMapping mapping{{
        {"L1", SuggestionKind::ClarifyTerm},
        {"L2", SuggestionKind::ClarifyTerm},
        {"L3", SuggestionKind::ClarifyTerm},
        {"L3", SuggestionKind::AddExamples},
        {"L4", SuggestionKind::SimplifyWording},
        {"L5", SuggestionKind::SimplifyWording},
        {"L6", SuggestionKind::SimplifyWording},
        {"L7", SuggestionKind::ClarifyTerm},
        {"N1", SuggestionKind::ClarifyTerm},
        {"N3", SuggestionKind::NeutralTone},
        {"N5", SuggestionKind::NeutralTone},
        {"N9", SuggestionKind::SimplifyWording},
        {"RTF", SuggestionKind::AddTimeframe},
        {"N10/Overlap", SuggestionKind::MutualExclusivity},
        {"N10/TopNotCovered", SuggestionKind::ReviseCategories},
        {"N10/InteriorGap", SuggestionKind::ReviseCategories},
        {"N10/SubWeeklyGap", SuggestionKind::ReviseCategories},
        {"N10/UnbalancedAgreementScale", SuggestionKind::ReviseCategories},
    }};
    return mapping;
}

KindMapping KindMapping::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::IoError, "cannot open kind mapping", file.string());
    KindMapping mapping;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string entry = text::trim(line);
        if (entry.empty()) continue;
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::MalformedDocument, "mapping line needs 'Key: Kind, Kind'",
                        file.string());
        std::string key = text::trim(entry.substr(0, colon));
        std::string rest = entry.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string name = text::trim(
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (!name.empty()) {
                auto kind = feedback::suggestion_kind_from_string(name);
                if (!kind)
                    throw Error(ErrorCode::MalformedDocument,
                                "unknown suggestion kind '" + name + "'", file.string());
                mapping.entries.emplace_back(key, *kind);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return mapping;
}

bool KindMapping::maps(const std::string& key, feedback::SuggestionKind kind) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.first == key && e.second == kind; });
}

bool KindMapping::has_key(const std::string& key) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.first == key; });
}

std::string finding_key(const lint::Finding& f) {
    std::string key = lint::to_string(f.rule);
    if (f.subkind) key += "/" + *f.subkind;
    return key;
}

std::vector<JudgmentItem> cross_check(const std::vector<lint::Finding>& findings,
                                      const feedback::PretestFeedback& fb,
                                      const KindMapping& mapping) {
    std::vector<JudgmentItem> items;
    std::vector<bool> finding_supported(findings.size(), false);

    for (const auto& s : fb.suggestions) {
        JudgmentItem item;
        item.suggestion_index = s.index;
        for (std::size_t fi = 0; fi < findings.size(); ++fi) {
            if (mapping.maps(finding_key(findings[fi]), s.kind)) {
                item.finding_indices.push_back(fi);
                finding_supported[fi] = true;
            }
        }
        if (item.finding_indices.empty()) {
            item.status = JudgmentStatus::UnsupportedByLint;
            item.note = "no deterministic finding backs this advice; needs researcher judgment";
        } else {
            item.status = JudgmentStatus::ConfirmedByLint;
            item.note = "deterministic finding(s) back this advice";
        }
        items.push_back(std::move(item));
    }

    for (std::size_t fi = 0; fi < findings.size(); ++fi) {
        if (finding_supported[fi]) continue;
        if (!mapping.has_key(finding_key(findings[fi]))) continue;
        JudgmentItem item;
        item.status = JudgmentStatus::MissedByAI;
        item.finding_indices = {fi};
        item.note = "deterministic finding with no matching AI advice";
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace pretestkit::compare

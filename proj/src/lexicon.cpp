#include "pretestkit/lexicon.hpp"

#include <fstream>

#include "pretestkit/error.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::lexicon {

std::vector<std::string> load_entries(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error(ErrorCode::LexiconUnavailable, "cannot open lexicon file", file.string());
    }
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string entry = text::trim(line);
        if (!entry.empty()) entries.push_back(text::fold(entry));
    }
    return entries;
}

std::unordered_set<std::string> load_set(const std::filesystem::path& file) {
    auto entries = load_entries(file);
    return {entries.begin(), entries.end()};
}

std::unordered_map<std::string, std::size_t> load_ranked(const std::filesystem::path& file) {
    auto entries = load_entries(file);
    std::unordered_map<std::string, std::size_t> ranked;
    ranked.reserve(entries.size());
    std::size_t rank = 0;
    for (auto& e : entries) {
        ++rank;
        ranked.emplace(std::move(e), rank);  // first occurrence wins
    }
    return ranked;
}

}  // namespace pretestkit::lexicon

#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pretestkit::lexicon {

/// Plain-text lexicon file: one entry per line, '#' starts a comment,
/// blank lines ignored. Entries are folded on load.
std::vector<std::string> load_entries(const std::filesystem::path& file);

std::unordered_set<std::string> load_set(const std::filesystem::path& file);

/// Ranked word list: line number (1-based, counting entries only) is the rank.
std::unordered_map<std::string, std::size_t> load_ranked(const std::filesystem::path& file);

}  // namespace pretestkit::lexicon

// Regenerates fixtures/corpus.transcript.json from the feedback/proposal text
// sources so the replay fixtures stay consistent with the prompt templates.
//
//   gen_fixtures <fixtures-dir>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pretestkit/llmclient.hpp"
#include "pretestkit/prompt.hpp"
#include "pretestkit/qmodel.hpp"

namespace pk = pretestkit;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "missing fixture source: " << path << "\n";
        std::exit(1);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string s = buf.str();
    // Sources are one text per file; a single trailing newline is editor noise.
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

constexpr const char* kRecordedAt = "2024-05-01T00:00:00Z";

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";

    auto nature_doc = pk::qmodel::load_questionnaire_file(dir + "/nature.q.json");
    auto comprehension_doc = pk::qmodel::load_questionnaire_file(dir + "/comprehension.q.json");
    pk::llm::ModelParams params;  // defaults are what replay runs use
    pk::prompt::PromptOptions popts;
    popts.params = params;

    pk::llm::Transcript transcript;

    using pk::prompt::Level;
    const Level sequential[] = {Level::TaskOnly, Level::TaskAim, Level::TaskAimPopulation,
                                Level::TaskAimPopulationPrinciples};
    for (int i = 0; i < 4; ++i) {
        auto spec = pk::prompt::build_prompt({sequential[i]}, nature_doc.questions.at(0), nature_doc.meta,
                                             popts);
        std::string response = slurp(dir + "/feedback/nature_level" + std::to_string(i + 1) +
                                     ".txt");
        transcript.put({spec.text, params}, response, kRecordedAt);
    }

    for (std::size_t i = 0; i < comprehension_doc.questions.size(); ++i) {
        auto spec = pk::prompt::build_prompt({Level::RolePlayGeneral}, comprehension_doc.questions[i],
                                             comprehension_doc.meta, popts);
        std::string n = std::to_string(i + 1);
        std::string feedback = slurp(dir + "/feedback/comprehension_q" + n + ".txt");
        std::string proposal = slurp(dir + "/proposals/ai_q" + n + ".txt");
        transcript.put({spec.text, params}, feedback + "\n\nImproved version: " + proposal,
                       kRecordedAt);
    }

    transcript.save_file(dir + "/corpus.transcript.json");
    std::cout << "wrote " << dir << "/corpus.transcript.json (" << transcript.size()
              << " entries)\n";
    return 0;
}

#include "pretestkit/llmclient.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pretestkit/error.hpp"
#include "pretestkit/sha256.hpp"

namespace pretestkit::llm {

using nlohmann::json;

namespace {

std::string format_temperature(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", t);
    return buf;
}

}  // namespace

std::string request_digest(const CompletionRequest& req) {
    std::string canonical = req.params.model + "\n" + format_temperature(req.params.temperature) +
                            "\n" + std::to_string(req.params.max_tokens) + "\n" + req.prompt;
    return sha256_hex(canonical);
}

Transcript Transcript::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open transcript file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Transcript Transcript::parse(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("transcript: ") + e.what());
    }
    Transcript t;
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_object())
        throw Error(ErrorCode::MalformedDocument, "transcript: missing 'entries' object");
    for (auto it = doc["entries"].begin(); it != doc["entries"].end(); ++it) {
        const json& je = it.value();
        TranscriptEntry e;
        e.model = je.at("model").get<std::string>();
        e.temperature = je.at("temperature").get<double>();
        e.max_tokens = je.at("max_tokens").get<int>();
        e.prompt = je.at("prompt").get<std::string>();
        e.response = je.at("response").get<std::string>();
        e.recorded_at = je.value("recorded_at", "");
        t.entries_.emplace(it.key(), std::move(e));
    }
    return t;
}

std::string Transcript::serialize() const {
    json entries = json::object();
    for (const auto& [digest, e] : entries_) {
        entries[digest] = {{"model", e.model},         {"temperature", e.temperature},
                           {"max_tokens", e.max_tokens}, {"prompt", e.prompt},
                           {"response", e.response},   {"recorded_at", e.recorded_at}};
    }
    json doc = {{"entries", entries}};
    return doc.dump(2) + "\n";
}

void Transcript::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write transcript file", path);
    out << serialize();
}

void Transcript::put(const CompletionRequest& req, const std::string& response,
                     const std::string& recorded_at) {
    TranscriptEntry e;
    e.model = req.params.model;
    e.temperature = req.params.temperature;
    e.max_tokens = req.params.max_tokens;
    e.prompt = req.prompt;
    e.response = response;
    e.recorded_at = recorded_at;
    entries_[request_digest(req)] = std::move(e);
}

const TranscriptEntry* Transcript::find(const std::string& digest) const {
    auto it = entries_.find(digest);
    return it == entries_.end() ? nullptr : &it->second;
}

const char* to_string(ClientMode mode) {
    switch (mode) {
        case ClientMode::Live: return "live";
        case ClientMode::Record: return "record";
        case ClientMode::Replay: return "replay";
    }
    return "?";
}

std::optional<ClientMode> client_mode_from_string(const std::string& s) {
    if (s == "live") return ClientMode::Live;
    if (s == "record") return ClientMode::Record;
    if (s == "replay") return ClientMode::Replay;
    return std::nullopt;
}

LlmClient::LlmClient(ClientConfig config, ClientMode mode, Transcript* store,
                     std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)),
      mode_(mode),
      store_(store),
      transport_(std::move(transport)),
      gate_(std::max(1, config_.concurrency_limit)) {
    if (mode_ != ClientMode::Replay && !transport_) transport_ = make_httplib_transport();
}

CompletionResult LlmClient::complete(const CompletionRequest& req) {
    if (req.prompt.empty())
        throw Error(ErrorCode::MalformedDocument, "completion request with empty prompt");
    if (req.params.temperature < 0.0 || req.params.temperature > 2.0)
        throw Error(ErrorCode::MalformedDocument, "temperature must be within [0, 2]");
    std::string digest = request_digest(req);

    if (mode_ == ClientMode::Replay) {
        if (!store_) throw Error(ErrorCode::TranscriptMiss, "replay mode without a transcript");
        const TranscriptEntry* entry = store_->find(digest);
        if (!entry)
            throw Error(ErrorCode::TranscriptMiss, "no transcript entry for request", digest);
        CompletionResult result;
        result.text = entry->response;
        result.model = entry->model;
        return result;
    }

    CompletionResult result = complete_live(req);
    if (mode_ == ClientMode::Record && store_) {
        std::lock_guard<std::mutex> lock(record_mutex_);
        store_->put(req, result.text, iso8601_now());
    }
    return result;
}

CompletionResult LlmClient::complete_live(const CompletionRequest& req) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key)
        throw Error(ErrorCode::AuthMissing,
                    "set " + config_.api_key_env + " for live/record mode");

    gate_.acquire();
    struct Release {
        Gate& gate;
        ~Release() { gate.release(); }
    } release{gate_};

    json body = {{"model", req.params.model},
                 {"messages", json::array({{{"role", "user"}, {"content", req.prompt}}})},
                 {"temperature", req.params.temperature},
                 {"max_tokens", req.params.max_tokens}};

    std::chrono::milliseconds backoff = config_.initial_backoff;
    std::string last_error = "no attempts made";
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        auto t0 = std::chrono::steady_clock::now();
        HttpResponse resp =
            transport_->post(config_.base_url, config_.completion_path, key, body.dump());
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0);

        if (resp.status == 200) {
            try {
                json parsed = json::parse(resp.body);
                CompletionResult result;
                result.text = parsed.at("choices").at(0).at("message").at("content")
                                  .get<std::string>();
                result.model = parsed.value("model", req.params.model);
                if (parsed.contains("usage")) {
                    result.prompt_tokens = parsed["usage"].value("prompt_tokens", 0);
                    result.completion_tokens = parsed["usage"].value("completion_tokens", 0);
                }
                result.latency = elapsed;
                return result;
            } catch (const json::exception& e) {
                throw Error(ErrorCode::NetworkFailure,
                            std::string("unexpected completion payload: ") + e.what());
            }
        }
        if (resp.status == 429) {
            last_error = "rate limited";
            if (attempt == config_.max_attempts) {
                std::string note = resp.retry_after_s
                                       ? "retry after " + std::to_string(*resp.retry_after_s) + "s"
                                       : "no retry-after given";
                throw Error(ErrorCode::RateLimited, "rate limited after retries", note);
            }
            auto wait = resp.retry_after_s ? std::chrono::milliseconds(*resp.retry_after_s * 1000)
                                           : backoff;
            std::this_thread::sleep_for(wait);
            backoff *= 2;
            continue;
        }
        if (resp.status == 0 || resp.status >= 500) {
            last_error = resp.status == 0 ? "transport error"
                                          : "server status " + std::to_string(resp.status);
            if (attempt == config_.max_attempts) break;
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
            continue;
        }
        // 4xx other than 429: not retryable.
        throw Error(ErrorCode::NetworkFailure,
                    "completion endpoint returned status " + std::to_string(resp.status),
                    resp.body.substr(0, 200));
    }
    throw Error(ErrorCode::NetworkFailure, "completion failed after retries", last_error);
}

std::string iso8601_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace pretestkit::llm

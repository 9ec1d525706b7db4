#pragma once

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace pretestkit::llm {

struct ModelParams {
    std::string model = "gpt-4";
    double temperature = 0.7;
    int max_tokens = 1024;

    bool operator==(const ModelParams&) const = default;
};

struct CompletionRequest {
    std::string prompt;
    ModelParams params;

    bool operator==(const CompletionRequest&) const = default;
};

struct CompletionResult {
    std::string text;  // exactly as returned; normalization is the parser's job
    std::string model;
    int prompt_tokens = 0;
    int completion_tokens = 0;
    std::chrono::milliseconds latency{0};
};

/// Canonical digest: sha256 over
/// model "\n" temperature(2 decimals) "\n" max_tokens "\n" prompt.
std::string request_digest(const CompletionRequest& req);

struct TranscriptEntry {
    std::string model;
    double temperature = 0.7;
    int max_tokens = 1024;
    std::string prompt;
    std::string response;
    std::string recorded_at;  // ISO-8601

    bool operator==(const TranscriptEntry&) const = default;
};

/// Exact-match request/response store keyed by request digest.
class Transcript {
public:
    static Transcript load_file(const std::string& path);
    static Transcript parse(const std::string& json_text);

    void save_file(const std::string& path) const;
    std::string serialize() const;

    /// Insert-or-refresh; one entry per digest.
    void put(const CompletionRequest& req, const std::string& response,
             const std::string& recorded_at);
    const TranscriptEntry* find(const std::string& digest) const;

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, TranscriptEntry>& entries() const { return entries_; }

    bool operator==(const Transcript&) const = default;

private:
    std::map<std::string, TranscriptEntry> entries_;  // digest -> entry, sorted for stable output
};

enum class ClientMode { Live, Record, Replay };

const char* to_string(ClientMode mode);
std::optional<ClientMode> client_mode_from_string(const std::string& s);

struct HttpResponse {
    int status = 0;
    std::string body;
    std::optional<int> retry_after_s;
};

/// One POST; transport errors surface as status 0. Injected so replay tests
/// can prove no network activity happens.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse post(const std::string& base_url, const std::string& path,
                              const std::string& bearer_token, const std::string& json_body) = 0;
};

std::unique_ptr<HttpTransport> make_httplib_transport();

struct ClientConfig {
    std::string base_url = "https://api.openai.com";
    std::string completion_path = "/v1/chat/completions";
    std::string api_key_env = "PRETEST_API_KEY";
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};
    int concurrency_limit = 2;
};

/// Chat-completion client with live / record / replay behavior. In replay
/// mode the transport is never touched and the store is read-only.
class LlmClient {
public:
    LlmClient(ClientConfig config, ClientMode mode, Transcript* store,
              std::unique_ptr<HttpTransport> transport = nullptr);

    CompletionResult complete(const CompletionRequest& req);

    ClientMode mode() const { return mode_; }

private:
    CompletionResult complete_live(const CompletionRequest& req);

    // Bounds concurrent in-flight live requests.
    class Gate {
    public:
        explicit Gate(int permits) : permits_(permits) {}
        void acquire() {
            std::unique_lock<std::mutex> lock(m_);
            cv_.wait(lock, [&] { return permits_ > 0; });
            --permits_;
        }
        void release() {
            {
                std::lock_guard<std::mutex> lock(m_);
                ++permits_;
            }
            cv_.notify_one();
        }

    private:
        std::mutex m_;
        std::condition_variable cv_;
        int permits_;
    };

    ClientConfig config_;
    ClientMode mode_;
    Transcript* store_;
    std::unique_ptr<HttpTransport> transport_;
    Gate gate_;
    std::mutex record_mutex_;
};

/// Current time as ISO-8601 UTC, e.g. "2024-05-01T00:00:00Z".
std::string iso8601_now();

}  // namespace pretestkit::llm

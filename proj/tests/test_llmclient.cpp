#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>

#include "pretestkit/error.hpp"
#include "pretestkit/llmclient.hpp"
#include "pretestkit/sha256.hpp"
#include "test_support.hpp"

using namespace pretestkit;
using llm::ClientMode;
using llm::CompletionRequest;

namespace {

// Transport double that counts round trips; the replay isolation check relies
// on this never being touched.
class CountingTransport final : public llm::HttpTransport {
public:
    std::atomic<int> calls{0};
    int status = 200;
    std::string body = R"({"choices":[{"message":{"content":"stub"}}],"model":"gpt-4"})";

    llm::HttpResponse post(const std::string&, const std::string&, const std::string&,
                           const std::string&) override {
        ++calls;
        return {status, body, std::nullopt};
    }
};

struct EnvKey {
    explicit EnvKey(const char* v) { setenv("PRETEST_API_KEY", v, 1); }
    ~EnvKey() { unsetenv("PRETEST_API_KEY"); }
};

}  // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // Padding boundary cases.
    CHECK(sha256_hex(std::string(55, 'a')).size() == 64);
    CHECK(sha256_hex(std::string(56, 'a')) != sha256_hex(std::string(57, 'a')));
}

TEST_CASE("request digest canonicalizes temperature to two decimals") {
    CompletionRequest a{"prompt text", {"gpt-4", 0.7, 1024}};
    CompletionRequest b{"prompt text", {"gpt-4", 0.70, 1024}};
    CompletionRequest c{"prompt text", {"gpt-4", 0.71, 1024}};
    CHECK(llm::request_digest(a) == llm::request_digest(b));
    CHECK(llm::request_digest(a) != llm::request_digest(c));
    CHECK(llm::request_digest(a) ==
          sha256_hex("gpt-4\n0.70\n1024\nprompt text"));
}

TEST_CASE("transcript survives a save/load round trip byte-exactly") {
    llm::Transcript t;
    t.put({"What?", {}}, "Because.", "2024-05-01T00:00:00Z");
    t.put({"Unicode \xE2\x80\x94 ok?", {}}, "Yes \xE2\x80\x94 fine.", "2024-05-01T00:00:00Z");
    auto path = std::filesystem::temp_directory_path() / "pretestkit_transcript_test.json";
    t.save_file(path.string());
    auto loaded = llm::Transcript::load_file(path.string());
    CHECK(loaded == t);
    CHECK(loaded.serialize() == t.serialize());
    std::filesystem::remove(path);
}

TEST_CASE("record mode refreshes a single entry per digest") {
    llm::Transcript t;
    t.put({"p", {}}, "first", "2024-05-01T00:00:00Z");
    t.put({"p", {}}, "second", "2024-05-02T00:00:00Z");
    CHECK(t.size() == 1);
    CHECK(t.find(llm::request_digest({"p", {}}))->response == "second");
}

TEST_CASE("replay returns the recorded fixture text for the level-1 prompt") {
    auto transcript = llm::Transcript::load_file(
        (testsupport::repo_root() / "fixtures" / "corpus.transcript.json").string());
    auto prompt_text = testsupport::read_fixture_text("prompts/nature_level1.txt");
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    llm::LlmClient client({}, ClientMode::Replay, &transcript, std::move(counting));
    auto result = client.complete({prompt_text, {}});
    CHECK(result.text.starts_with("1. Clarify the Definition of \"Activities\""));
    CHECK(counter->calls == 0);
}

TEST_CASE("requests outside the valid parameter range are rejected") {
    llm::Transcript empty;
    llm::LlmClient client({}, ClientMode::Replay, &empty);
    CHECK_THROWS_AS(client.complete({"", {}}), Error);
    CHECK_THROWS_AS(client.complete({"fine", {"gpt-4", 2.5, 10}}), Error);
}

TEST_CASE("replay of an unknown digest names the digest") {
    llm::Transcript empty;
    llm::LlmClient client({}, ClientMode::Replay, &empty);
    CompletionRequest req{"nobody recorded this", {}};
    try {
        client.complete(req);
        FAIL("expected TranscriptMiss");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TranscriptMiss);
        CHECK(e.location() == llm::request_digest(req));
    }
}

TEST_CASE("replay mode performs no network activity across the whole fixture set") {
    auto transcript = llm::Transcript::load_file(
        (testsupport::repo_root() / "fixtures" / "corpus.transcript.json").string());
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    llm::LlmClient client({}, ClientMode::Replay, &transcript, std::move(counting));
    for (const auto& [digest, entry] : transcript.entries()) {
        auto result = client.complete(
            {entry.prompt, {entry.model, entry.temperature, entry.max_tokens}});
        CHECK(result.text == entry.response);
    }
    CHECK(counter->calls == 0);
}

TEST_CASE("live mode without credentials fails up front, before any transport call") {
    unsetenv("PRETEST_API_KEY");
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    llm::LlmClient client({}, ClientMode::Live, nullptr, std::move(counting));
    try {
        client.complete({"x", {}});
        FAIL("expected AuthMissing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AuthMissing);
    }
    CHECK(counter->calls == 0);
}

TEST_CASE("record mode stores the live response under the request digest") {
    EnvKey key("test-key");
    llm::Transcript store;
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    llm::LlmClient client({}, ClientMode::Record, &store, std::move(counting));
    auto result = client.complete({"record me", {}});
    CHECK(result.text == "stub");
    CHECK(counter->calls == 1);
    REQUIRE(store.size() == 1);
    CHECK(store.find(llm::request_digest({"record me", {}}))->response == "stub");
}

TEST_CASE("transient failures retry and then surface NetworkFailure") {
    EnvKey key("test-key");
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    counter->status = 503;
    llm::ClientConfig cfg;
    cfg.initial_backoff = std::chrono::milliseconds(1);
    llm::LlmClient client(cfg, ClientMode::Live, nullptr, std::move(counting));
    try {
        client.complete({"flaky", {}});
        FAIL("expected NetworkFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NetworkFailure);
    }
    CHECK(counter->calls == 3);
}

TEST_CASE("non-retryable statuses fail immediately") {
    EnvKey key("test-key");
    auto counting = std::make_unique<CountingTransport>();
    auto* counter = counting.get();
    counter->status = 401;
    llm::LlmClient client({}, ClientMode::Live, nullptr, std::move(counting));
    CHECK_THROWS_AS(client.complete({"denied", {}}), Error);
    CHECK(counter->calls == 1);
}

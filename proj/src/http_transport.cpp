#include <cstdlib>
#include <string>

#ifdef PRETESTKIT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "pretestkit/llmclient.hpp"

namespace pretestkit::llm {

namespace {

class HttplibTransport final : public HttpTransport {
public:
    HttpResponse post(const std::string& base_url, const std::string& path,
                      const std::string& bearer_token, const std::string& json_body) override {
        httplib::Client client(base_url);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(120, 0);
        httplib::Headers headers = {{"Authorization", "Bearer " + bearer_token}};
        auto res = client.Post(path, headers, json_body, "application/json");
        HttpResponse out;
        if (!res) return out;  // status 0 = transport error
        out.status = res->status;
        out.body = res->body;
        if (res->has_header("Retry-After")) {
            try {
                out.retry_after_s = std::stoi(res->get_header_value("Retry-After"));
            } catch (...) {
            }
        }
        return out;
    }
};

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport() {
    return std::make_unique<HttplibTransport>();
}

}  // namespace pretestkit::llm

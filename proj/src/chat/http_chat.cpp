#include "bardsl/chat/http_chat.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <openssl/evp.h>

namespace bardsl::chat {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(FailureKind k) {
    switch (k) {
        case FailureKind::Transport: return "Transport";
        case FailureKind::Timeout: return "Timeout";
        case FailureKind::HttpStatus: return "HttpStatus";
        case FailureKind::Malformed: return "Malformed";
        case FailureKind::Config: return "Config";
    }
    return "?";
}

ordered_json build_request(const std::string& model, const Message& msg) {
    ordered_json user;
    user["role"] = "user";
    if (msg.image_data_url) {
        ordered_json text_part{{"type", "text"}, {"text", msg.user}};
        ordered_json image_part{{"type", "image_url"}, {"image_url", {{"url", *msg.image_data_url}}}};
        user["content"] = ordered_json::array({text_part, image_part});
    } else {
        user["content"] = msg.user;
    }
    ordered_json req;
    req["model"] = model;
    req["temperature"] = 0;
    req["messages"] = ordered_json::array({ordered_json{{"role", "system"}, {"content", msg.system}}, user});
    return req;
}

Result<std::string, Failure> parse_response(const std::string& body) {
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) return fail(Failure{FailureKind::Malformed, "response body is not JSON"});
    try {
        const auto& content = j.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) return fail(Failure{FailureKind::Malformed, "message content is not a string"});
        return content.get<std::string>();
    } catch (const json::exception&) {
        return fail(Failure{FailureKind::Malformed, "response has no choices[0].message.content"});
    }
}

namespace {

struct SplitUrl {
    std::string origin;  ///< scheme://host[:port]
    std::string path;
};

std::optional<SplitUrl> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") return std::nullopt;
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return SplitUrl{url, "/"};
    return SplitUrl{url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

Result<std::string, Failure> post(const Endpoint& ep, const Message& msg) {
    const auto parts = split_url(ep.url);
    if (!parts) return fail(Failure{FailureKind::Config, "endpoint URL must be http(s)://host[:port]/path: " + ep.url});

    httplib::Headers headers;
    if (!ep.api_key_env.empty()) {
        const char* key = std::getenv(ep.api_key_env.c_str());
        if (key == nullptr || *key == '\0') {
            return fail(Failure{FailureKind::Config, "environment variable " + ep.api_key_env + " is not set"});
        }
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    httplib::Client client(parts->origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(ep.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(ep.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    const std::string body = build_request(ep.model, msg).dump();
    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(parts->path, headers, body, "application/json");
    const auto elapsed = std::chrono::steady_clock::now() - started;
    if (!res) {
        const auto err = res.error();
        // The client reports an expired read deadline as a plain read error.
        const bool timed_out = (err == httplib::Error::Read || err == httplib::Error::Connection) &&
                               elapsed >= ep.timeout * 9 / 10;
        return fail(Failure{timed_out ? FailureKind::Timeout : FailureKind::Transport,
                            "request to " + ep.url + " failed: " + httplib::to_string(err)});
    }
    if (res->status < 200 || res->status >= 300) {
        const auto kind = res->status >= 500 || res->status == 429 ? FailureKind::Transport : FailureKind::HttpStatus;
        return fail(Failure{kind, "HTTP " + std::to_string(res->status) + " from " + ep.url, res->status});
    }
    return parse_response(res->body);
}

Result<std::string, std::string> file_data_url(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail("cannot open image " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    std::string mime = "application/octet-stream";
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "png") mime = "image/png";
    else if (ext == "jpg" || ext == "jpeg") mime = "image/jpeg";
    else if (ext == "svg") mime = "image/svg+xml";
    else if (ext == "pgm") mime = "image/x-portable-graymap";

    std::string encoded(4 * ((bytes.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(encoded.data()),
                                  reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<int>(bytes.size()));
    encoded.resize(static_cast<std::size_t>(n));
    return "data:" + mime + ";base64," + encoded;
}

}  // namespace bardsl::chat

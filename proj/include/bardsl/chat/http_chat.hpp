#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <json.hpp>

#include "bardsl/result.hpp"

namespace bardsl::chat {

struct Endpoint {
    std::string url;          ///< full URL of the chat-completions route
    std::string model;
    std::string api_key_env;  ///< name of the variable holding the bearer key; empty for none
    std::chrono::milliseconds timeout{60000};
};

enum class FailureKind { Transport, Timeout, HttpStatus, Malformed, Config };

struct Failure {
    FailureKind kind = FailureKind::Transport;
    std::string message;
    int status = 0;
};

const char* to_string(FailureKind k);

struct Message {
    std::string system;
    std::string user;
    std::optional<std::string> image_data_url;  ///< attached to the user turn when present
};

/// Request body with temperature 0 and a [system, user] message array.
/// Identical inputs give identical bodies.
nlohmann::ordered_json build_request(const std::string& model, const Message& msg);

/// Extracts choices[0].message.content.
Result<std::string, Failure> parse_response(const std::string& body);

/// One blocking POST. No retries here.
Result<std::string, Failure> post(const Endpoint& ep, const Message& msg);

/// `data:<mime>;base64,...` for a local file, mime guessed from the extension.
Result<std::string, std::string> file_data_url(const std::string& path);

}  // namespace bardsl::chat

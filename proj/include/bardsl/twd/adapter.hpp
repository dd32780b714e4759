#pragma once

#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bardsl/chat/http_chat.hpp"
#include "bardsl/result.hpp"

namespace bardsl::twd {

struct AdapterError {
    std::string message;
    bool exhausted = false;  ///< scripted queue ran dry
};

/// The model under test: one prompt in, one completion out.
class ModelAdapter {
public:
    virtual ~ModelAdapter() = default;
    virtual Result<std::string, AdapterError> complete(const std::string& prompt,
                                                       const std::optional<std::string>& image_ref) = 0;
};

/// Chat endpoint; the image, if any, is attached as a data URL.
class HttpAdapter final : public ModelAdapter {
public:
    HttpAdapter(chat::Endpoint ep, std::string system_preamble);
    Result<std::string, AdapterError> complete(const std::string& prompt,
                                               const std::optional<std::string>& image_ref) override;

private:
    chat::Endpoint ep_;
    std::string system_;
};

/// Canned responses in FIFO order. Records every prompt it receives.
class ScriptedAdapter final : public ModelAdapter {
public:
    explicit ScriptedAdapter(std::vector<std::string> responses);
    Result<std::string, AdapterError> complete(const std::string& prompt,
                                               const std::optional<std::string>& image_ref) override;

    [[nodiscard]] std::size_t remaining() const;
    [[nodiscard]] std::vector<std::string> prompts() const;
    [[nodiscard]] std::vector<std::optional<std::string>> image_refs() const;

private:
    mutable std::mutex mu_;
    std::deque<std::string> queue_;
    std::vector<std::string> prompts_;
    std::vector<std::optional<std::string>> images_;
};

}  // namespace bardsl::twd

#include "bardsl/twd/adapter.hpp"

namespace bardsl::twd {

HttpAdapter::HttpAdapter(chat::Endpoint ep, std::string system_preamble)
    : ep_(std::move(ep)), system_(std::move(system_preamble)) {}

Result<std::string, AdapterError> HttpAdapter::complete(const std::string& prompt,
                                                        const std::optional<std::string>& image_ref) {
    chat::Message msg{system_, prompt, {}};
    if (image_ref) {
        auto url = chat::file_data_url(*image_ref);
        if (!url) return fail(AdapterError{url.error()});
        msg.image_data_url = std::move(url).value();
    }
    auto reply = chat::post(ep_, msg);
    if (!reply) {
        return fail(AdapterError{std::string(chat::to_string(reply.error().kind)) + ": " + reply.error().message});
    }
    return std::move(reply).value();
}

ScriptedAdapter::ScriptedAdapter(std::vector<std::string> responses) : queue_(responses.begin(), responses.end()) {}

Result<std::string, AdapterError> ScriptedAdapter::complete(const std::string& prompt,
                                                            const std::optional<std::string>& image_ref) {
    std::lock_guard lock(mu_);
    prompts_.push_back(prompt);
    images_.push_back(image_ref);
    if (queue_.empty()) return fail(AdapterError{"scripted adapter has no responses left", true});
    std::string next = std::move(queue_.front());
    queue_.pop_front();
    return next;
}

std::size_t ScriptedAdapter::remaining() const {
    std::lock_guard lock(mu_);
    return queue_.size();
}

std::vector<std::string> ScriptedAdapter::prompts() const {
    std::lock_guard lock(mu_);
    return prompts_;
}

std::vector<std::optional<std::string>> ScriptedAdapter::image_refs() const {
    std::lock_guard lock(mu_);
    return images_;
}

}  // namespace bardsl::twd

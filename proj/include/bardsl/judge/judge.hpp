#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bardsl/chat/http_chat.hpp"
#include "bardsl/corpus/manifest.hpp"
#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"
#include "bardsl/verify/verifier.hpp"

namespace bardsl::judge {

enum class Mode { Off, Stub, Live };

const char* to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view s);

struct JudgeConfig {
    Mode mode = Mode::Stub;
    std::string endpoint_url;
    std::string model_name;
    std::string api_key_env_var = "BARDSL_JUDGE_API_KEY";
    std::chrono::milliseconds timeout{60000};
    int max_retries = 3;
    std::chrono::milliseconds backoff_base{500};
    std::filesystem::path fixture_dir;  ///< stub transcripts, one `<id>.txt` per instance
    int concurrency = 4;
};

/// Empty when usable.
std::optional<std::string> validate(const JudgeConfig& cfg);

enum class Verdict { Pass, Fail };

struct CriterionVerdict {
    Verdict verdict = Verdict::Pass;
    std::string justification;
    bool operator==(const CriterionVerdict&) const = default;
};

/// Judge criteria are numbered 1..10: 1-6 critical, 7-10 non-critical.
inline constexpr int kCriterionCount = 10;
inline constexpr int kLastCritical = 6;
const char* criterion_name(int number);

struct JudgeVerdict {
    std::map<int, CriterionVerdict> per_criterion;
    double final_score = 1;   ///< derived from per_criterion
    double stated_score = 1;  ///< as printed by the judge
    std::string raw_response;
};

enum class JudgeErrorKind { Transport, Timeout, MalformedResponse, InconsistentScore, Config };

const char* to_string(JudgeErrorKind k);

struct JudgeError {
    JudgeErrorKind kind = JudgeErrorKind::Transport;
    std::string message;
    std::string raw_response;
    int attempts = 0;
};

struct JudgeRequest {
    std::string instance_id;
    chat::Message message;
};

/// Sends one prompt and returns the raw reply.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual Result<std::string, chat::Failure> send(const JudgeRequest& req) = 0;
};

class LiveTransport final : public ChatTransport {
public:
    explicit LiveTransport(chat::Endpoint ep) : ep_(std::move(ep)) {}
    Result<std::string, chat::Failure> send(const JudgeRequest& req) override;

private:
    chat::Endpoint ep_;
};

/// Replays `<dir>/<instance id>.txt`.
class StubTransport final : public ChatTransport {
public:
    explicit StubTransport(std::filesystem::path dir) : dir_(std::move(dir)) {}
    Result<std::string, chat::Failure> send(const JudgeRequest& req) override;

private:
    std::filesystem::path dir_;
};

Result<std::unique_ptr<ChatTransport>, JudgeError> make_transport(const JudgeConfig& cfg);

/// Fixed system turn sent with every scoring request.
extern const char* const kSystemPreamble;

/// Scoring prompt with problem text and canonical DSL interpolated.
std::string build_prompt(const std::string& problem, const dsl::Program& candidate);
JudgeRequest build_request(const corpus::Instance& instance, const dsl::Program& candidate);

/// 0 on any critical fail, else 1 - 0.1 per failed non-critical criterion.
double derive_score(const std::map<int, CriterionVerdict>& per_criterion);

/// Reads the rationale (keyed by criterion number) and the final score line.
Result<JudgeVerdict, JudgeError> parse_verdict(const std::string& response);

using SleepFn = std::function<void(std::chrono::milliseconds)>;

/// One scoring call with retries on transport failures and timeouts.
Result<JudgeVerdict, JudgeError> judge(const corpus::Instance& instance, const dsl::Program& candidate,
                                       const JudgeConfig& cfg, ChatTransport& transport, const SleepFn& sleep = {});

/// align <- 1, cover <- 2, num <- 3, leak <- 5, norm <- 1 - 0.25 x fails among {4, 6, 7, 8}.
verify::Dims dims_from_verdict(const JudgeVerdict& v);

Result<verify::Dims, JudgeError> judge_dims(const corpus::Instance& instance, const dsl::Program& candidate,
                                            const JudgeConfig& cfg, ChatTransport& transport,
                                            const SleepFn& sleep = {});

struct JudgeTask {
    const corpus::Instance* instance = nullptr;
    const dsl::Program* candidate = nullptr;
};

/// Runs tasks with at most cfg.concurrency requests in flight. Results are
/// in task order.
std::vector<Result<JudgeVerdict, JudgeError>> judge_batch(std::span<const JudgeTask> tasks, const JudgeConfig& cfg,
                                                          ChatTransport& transport, const SleepFn& sleep = {});

}  // namespace bardsl::judge

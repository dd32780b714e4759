#include "bardsl/judge/judge.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace bardsl::judge {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Off: return "off";
        case Mode::Stub: return "stub";
        case Mode::Live: return "live";
    }
    return "?";
}

std::optional<Mode> mode_from_string(std::string_view s) {
    if (s == "off") return Mode::Off;
    if (s == "stub") return Mode::Stub;
    if (s == "live") return Mode::Live;
    return std::nullopt;
}

const char* to_string(JudgeErrorKind k) {
    switch (k) {
        case JudgeErrorKind::Transport: return "Transport";
        case JudgeErrorKind::Timeout: return "Timeout";
        case JudgeErrorKind::MalformedResponse: return "MalformedResponse";
        case JudgeErrorKind::InconsistentScore: return "InconsistentScore";
        case JudgeErrorKind::Config: return "Config";
    }
    return "?";
}

const char* criterion_name(int number) {
    constexpr const char* names[] = {"alignment",       "completeness",       "numerical-consistency",
                                     "transfer",        "leakage",            "vb-vl-usage",
                                     "reduction",       "multiplicative",     "decomposition",
                                     "label-conciseness"};
    return number >= 1 && number <= kCriterionCount ? names[number - 1] : "?";
}

std::optional<std::string> validate(const JudgeConfig& cfg) {
    if (cfg.max_retries < 0) return "max_retries must be >= 0";
    if (cfg.concurrency < 1) return "concurrency must be >= 1";
    switch (cfg.mode) {
        case Mode::Off: return std::nullopt;
        case Mode::Stub:
            if (cfg.fixture_dir.empty()) return "stub judge needs a fixture directory";
            if (!std::filesystem::is_directory(cfg.fixture_dir)) {
                return "stub fixture directory does not exist: " + cfg.fixture_dir.string();
            }
            return std::nullopt;
        case Mode::Live:
            if (cfg.endpoint_url.empty()) return "live judge needs an endpoint URL";
            if (cfg.model_name.empty()) return "live judge needs a model name";
            if (cfg.api_key_env_var.empty() || std::getenv(cfg.api_key_env_var.c_str()) == nullptr) {
                return "live judge needs the key variable " + cfg.api_key_env_var + " to be set";
            }
            return std::nullopt;
    }
    return std::nullopt;
}

Result<std::string, chat::Failure> LiveTransport::send(const JudgeRequest& req) { return chat::post(ep_, req.message); }

Result<std::string, chat::Failure> StubTransport::send(const JudgeRequest& req) {
    const auto path = dir_ / (req.instance_id + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(chat::Failure{chat::FailureKind::Config, "no stub transcript at " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Result<std::unique_ptr<ChatTransport>, JudgeError> make_transport(const JudgeConfig& cfg) {
    if (auto err = validate(cfg)) return fail(JudgeError{JudgeErrorKind::Config, *err, {}, 0});
    switch (cfg.mode) {
        case Mode::Stub: return std::unique_ptr<ChatTransport>(std::make_unique<StubTransport>(cfg.fixture_dir));
        case Mode::Live:
            return std::unique_ptr<ChatTransport>(std::make_unique<LiveTransport>(
                chat::Endpoint{cfg.endpoint_url, cfg.model_name, cfg.api_key_env_var, cfg.timeout}));
        case Mode::Off: break;
    }
    return fail(JudgeError{JudgeErrorKind::Config, "judge is off", {}, 0});
}

double derive_score(const std::map<int, CriterionVerdict>& per_criterion) {
    int noncritical_fails = 0;
    for (const auto& [n, v] : per_criterion) {
        if (v.verdict != Verdict::Fail) continue;
        if (n <= kLastCritical) return 0.0;
        ++noncritical_fails;
    }
    return std::max(0, 10 - noncritical_fails) / 10.0;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        out.push_back(text.substr(pos, end - pos));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

/// Criterion number leading a rationale line, e.g. "(3)", "3.", "**(3) ...", "Criterion 3:".
std::optional<int> leading_number(std::string_view line, std::size_t* after) {
    std::size_t i = 0;
    auto skip = [&](std::string_view chars) {
        while (i < line.size() && chars.find(line[i]) != std::string_view::npos) ++i;
    };
    skip(" \t*-#>_");
    for (std::string_view word : {"Criterion", "criterion"}) {
        if (line.substr(i, word.size()) == word) {
            i += word.size();
            skip(" \t");
        }
    }
    skip("([");
    const std::size_t start = i;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
    if (i == start || i - start > 2) return std::nullopt;
    int n = 0;
    std::from_chars(line.data() + start, line.data() + i, n);
    if (i < line.size() && std::string_view(")].:").find(line[i]) == std::string_view::npos && line[i] != ' ') {
        return std::nullopt;
    }
    if (n < 1 || n > kCriterionCount) return std::nullopt;
    *after = i;
    return n;
}

struct Token {
    Verdict verdict;
    std::size_t pos;
    std::size_t len;
};

std::optional<Token> find_verdict(std::string_view line) {
    const auto p = line.find("[PASS]");
    const auto f = line.find("[FAIL]");
    if (p == std::string_view::npos && f == std::string_view::npos) return std::nullopt;
    if (f == std::string_view::npos || (p != std::string_view::npos && p < f)) return Token{Verdict::Pass, p, 6};
    return Token{Verdict::Fail, f, 6};
}

std::string justification_of(std::string_view line, std::size_t number_end, const Token& tok) {
    std::string_view rest = line.substr(tok.pos + tok.len);
    const auto b = rest.find_first_not_of(" \t:-*");
    rest = b == std::string_view::npos ? std::string_view{} : rest.substr(b);
    if (!trim(rest).empty()) return std::string(trim(rest));
    std::string_view before = line.substr(number_end, tok.pos - number_end);
    const auto bb = before.find_first_not_of(" \t:).]*-");
    before = bb == std::string_view::npos ? std::string_view{} : before.substr(bb);
    return std::string(trim(before));
}

constexpr std::string_view kFinalMarker = "[Final Score]";
constexpr std::string_view kRationaleMarker = "[Scoring Rationale]";

}  // namespace

Result<JudgeVerdict, JudgeError> parse_verdict(const std::string& response) {
    JudgeVerdict v;
    v.raw_response = response;
    auto malformed = [&](std::string msg) {
        return fail(JudgeError{JudgeErrorKind::MalformedResponse, std::move(msg), response, 0});
    };

    const auto lines = lines_of(response);
    std::optional<std::size_t> final_line;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].find(kFinalMarker) != std::string_view::npos) final_line = i;
    }
    if (!final_line) return malformed("response has no [Final Score] line");

    std::string_view score_text = lines[*final_line].substr(lines[*final_line].find(kFinalMarker) + kFinalMarker.size());
    score_text = trim(score_text);
    if (!score_text.empty() && score_text.front() == ':') score_text.remove_prefix(1);
    score_text = trim(score_text);
    while (!score_text.empty() && (score_text.front() == '*' || score_text.front() == '`')) score_text.remove_prefix(1);
    double stated = 0;
    const auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), stated);
    if (ec != std::errc{} || ptr == score_text.data() || !std::isfinite(stated)) {
        return malformed("final score is not a number: '" + std::string(score_text) + "'");
    }
    if (stated < 0 || stated > 1) return malformed("final score outside [0, 1]: " + std::string(score_text));
    v.stated_score = stated;

    std::size_t begin = 0;
    for (std::size_t i = 0; i < *final_line; ++i) {
        if (lines[i].find(kRationaleMarker) != std::string_view::npos) {
            begin = i + 1;
            break;
        }
    }

    std::optional<int> pending;
    std::size_t pending_end = 0;
    for (std::size_t i = begin; i < *final_line; ++i) {
        const std::string_view line = lines[i];
        std::size_t number_end = 0;
        const auto n = leading_number(line, &number_end);
        if (n) {
            pending = n;
            pending_end = number_end;
        }
        if (!pending) continue;
        const auto tok = find_verdict(line);
        if (!tok) continue;
        const std::size_t from = n ? pending_end : 0;
        v.per_criterion.emplace(*pending, CriterionVerdict{tok->verdict, justification_of(line, from, *tok)});
        pending.reset();
    }

    v.final_score = derive_score(v.per_criterion);
    if (std::fabs(v.final_score - v.stated_score) > 1e-6) {
        std::ostringstream os;
        os << "stated score " << v.stated_score << " disagrees with " << v.final_score << " derived from "
           << v.per_criterion.size() << " parsed criteria";
        return fail(JudgeError{JudgeErrorKind::InconsistentScore, os.str(), response, 0});
    }
    return v;
}

Result<JudgeVerdict, JudgeError> judge(const corpus::Instance& instance, const dsl::Program& candidate,
                                       const JudgeConfig& cfg, ChatTransport& transport, const SleepFn& sleep) {
    const JudgeRequest req = build_request(instance, candidate);
    JudgeError last;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (attempt > 0) {
            const auto delay = cfg.backoff_base * (1LL << (attempt - 1));
            if (sleep) {
                sleep(delay);
            } else {
                std::this_thread::sleep_for(delay);
            }
        }
        auto reply = transport.send(req);
        if (reply) {
            auto verdict = parse_verdict(*reply);
            if (!verdict) verdict.error().attempts = attempt + 1;
            return verdict;
        }
        const auto& f = reply.error();
        last = JudgeError{JudgeErrorKind::Transport, f.message, {}, attempt + 1};
        if (f.kind == chat::FailureKind::Timeout) {
            last.kind = JudgeErrorKind::Timeout;
        } else if (f.kind == chat::FailureKind::Malformed) {
            last.kind = JudgeErrorKind::MalformedResponse;
            return fail(std::move(last));
        } else if (f.kind == chat::FailureKind::Config || f.kind == chat::FailureKind::HttpStatus) {
            if (f.kind == chat::FailureKind::Config) last.kind = JudgeErrorKind::Config;
            return fail(std::move(last));
        }
    }
    return fail(std::move(last));
}

verify::Dims dims_from_verdict(const JudgeVerdict& v) {
    auto failed = [&](int n) {
        const auto it = v.per_criterion.find(n);
        return it != v.per_criterion.end() && it->second.verdict == Verdict::Fail;
    };
    verify::Dims d;
    d.align = failed(1) ? 0.0 : 1.0;
    d.cover = failed(2) ? 0.0 : 1.0;
    d.num = failed(3) ? 0.0 : 1.0;
    d.leak = failed(5) ? 0.0 : 1.0;
    int norm_fails = 0;
    for (int n : {4, 6, 7, 8}) norm_fails += failed(n) ? 1 : 0;
    d.norm = 1.0 - 0.25 * norm_fails;
    return d;
}

Result<verify::Dims, JudgeError> judge_dims(const corpus::Instance& instance, const dsl::Program& candidate,
                                            const JudgeConfig& cfg, ChatTransport& transport, const SleepFn& sleep) {
    auto v = judge(instance, candidate, cfg, transport, sleep);
    if (!v) return fail(std::move(v).error());
    return dims_from_verdict(*v);
}

std::vector<Result<JudgeVerdict, JudgeError>> judge_batch(std::span<const JudgeTask> tasks, const JudgeConfig& cfg,
                                                          ChatTransport& transport, const SleepFn& sleep) {
    std::vector<std::optional<Result<JudgeVerdict, JudgeError>>> slots(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            slots[i].emplace(judge(*tasks[i].instance, *tasks[i].candidate, cfg, transport, sleep));
        }
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.concurrency)), tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<Result<JudgeVerdict, JudgeError>> out;
    out.reserve(tasks.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace bardsl::judge

#include "bardsl/twd/loop.hpp"

#include <cctype>
#include <charconv>

#include "bardsl/dsl/macros.hpp"
#include "bardsl/dsl/parser.hpp"
#include "bardsl/render/image.hpp"
#include "bardsl/scene/scene.hpp"
#include "bardsl/twd/prompts.hpp"
#include "bardsl/twd/trace_io.hpp"
#include "bardsl/verify/checks.hpp"
#include "bardsl/verify/report_io.hpp"

namespace bardsl::twd {

const char* to_string(LoopErrorKind k) {
    switch (k) {
        case LoopErrorKind::Exhausted: return "Exhausted";
        case LoopErrorKind::Adapter: return "Adapter";
        case LoopErrorKind::MalformedStage2: return "MalformedStage2";
        case LoopErrorKind::NoDraft: return "NoDraft";
    }
    return "?";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        out.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

struct Fence {
    std::string info;
    std::size_t open = 0;   ///< line index of the opening fence
    std::size_t close = 0;  ///< line index of the closing fence, or lines.size()
};

}  // namespace

Extracted extract_dsl(const std::string& response) {
    const auto lines = split_lines(response);
    std::vector<Fence> fences;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto t = trim(lines[i]);
        if (t.substr(0, 3) != "```") continue;
        Fence f{std::string(trim(t.substr(3))), i, lines.size()};
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (trim(lines[j]).substr(0, 3) == "```") {
                f.close = j;
                break;
            }
        }
        fences.push_back(f);
        i = f.close;
    }

    Extracted out;
    const Fence* chosen = nullptr;
    for (const auto& f : fences) {
        std::string info = f.info;
        for (auto& c : info) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (info == "dsl") {
            chosen = &f;
            break;
        }
    }
    if (chosen == nullptr && !fences.empty()) chosen = &fences.front();

    std::string explanation;
    std::string body;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (chosen != nullptr && i >= chosen->open && i <= chosen->close) {
            if (i != chosen->open && i != chosen->close) {
                body += lines[i];
                body += '\n';
            }
            continue;
        }
        explanation += lines[i];
        explanation += '\n';
    }
    out.explanation = std::string(trim(explanation));
    if (chosen != nullptr) out.dsl = std::move(body);
    return out;
}

std::optional<std::string> extract_answer(const std::string& response) {
    std::optional<std::string> found;
    for (auto line : split_lines(response)) {
        auto t = trim(line);
        while (!t.empty() && (t.front() == '*' || t.front() == '_')) t.remove_prefix(1);
        if (t.substr(0, 6) != "Answer") continue;
        t.remove_prefix(6);
        while (!t.empty() && (t.front() == '*' || t.front() == '_')) t.remove_prefix(1);
        if (t.empty() || t.front() != ':') continue;
        t.remove_prefix(1);
        while (!t.empty() && (t.front() == '*' || t.front() == '_')) t.remove_prefix(1);
        while (!t.empty() && (t.back() == '*' || t.back() == '_')) t.remove_suffix(1);
        t = trim(t);
        if (!t.empty()) found = std::string(t);
    }
    return found;
}

std::optional<double> parse_answer_number(const std::string& answer) {
    std::string s;
    for (char c : trim(answer)) {
        if (c != ',' && c != '$') s += c;
    }
    std::string_view v = trim(s);
    if (!v.empty() && v.back() == '.') v.remove_suffix(1);
    std::size_t i = 0;
    if (i < v.size() && v[i] == '-') ++i;
    const std::size_t digits = i;
    while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) ++i;
    if (i == digits) return std::nullopt;
    if (i < v.size() && v[i] == '.') {
        const std::size_t frac = ++i;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) ++i;
        if (i == frac) return std::nullopt;
    }
    if (i < v.size() && v[i] != ' ' && v[i] != '%') return std::nullopt;
    double out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + i, out);
    if (ec != std::errc{}) return std::nullopt;
    return out;
}

const Attempt* DraftTrace::best_attempt() const {
    for (auto it = attempts.rbegin(); it != attempts.rend(); ++it) {
        if (it->draft && it->verification) return &*it;
    }
    return nullptr;
}

namespace {

struct Built {
    std::optional<dsl::Program> program;
    std::optional<scene::Scene> scene;
    std::optional<std::string> error;
};

Built build(const std::string& dsl_text, const std::string& source) {
    Built b;
    auto parsed = dsl::parse(dsl_text, source);
    if (!parsed) {
        b.error = parsed.error().format(source);
        return b;
    }
    auto expanded = dsl::expand_macros(*parsed);
    if (!expanded) {
        b.error = source + ": " + to_string(expanded.error().kind) + ": " + expanded.error().message;
        return b;
    }
    auto sc = scene::build_scene(*expanded);
    if (!sc) {
        b.error = source + ": " + to_string(sc.error().kind) + ": " + sc.error().message;
        return b;
    }
    b.program = std::move(expanded).value();
    b.scene = std::move(sc).value();
    return b;
}

std::vector<std::string> problems_of(const Attempt& a) {
    if (a.error) return {*a.error};
    std::vector<std::string> out;
    for (const auto& d : a.verification->diagnostics) out.push_back(verify::to_text(d));
    return out;
}

}  // namespace

Attempt evaluate_draft(std::string response, const verify::ProblemMeta& meta, const LoopOptions& opts) {
    Attempt a;
    auto ex = extract_dsl(response);
    a.response = std::move(response);
    a.explanation = std::move(ex.explanation);
    a.dsl_text = std::move(ex.dsl);
    if (!a.dsl_text) {
        a.error = "response has no fenced DSL block";
        return a;
    }
    auto b = build(*a.dsl_text, "draft");
    if (b.error) {
        a.error = std::move(b.error);
        return a;
    }
    a.verification = verify::verify_scene(*b.program, *b.scene, meta);
    if (opts.keep_renders) a.render = render::render_all(*b.scene, opts.render);
    a.draft = std::move(b.program);
    return a;
}

Result<DraftTrace, LoopError> run_stage1(const corpus::Instance& instance, ModelAdapter& adapter,
                                         const LoopOptions& opts) {
    DraftTrace trace;
    trace.instance_id = instance.id;
    std::string prompt = draft_prompt(instance.problem);
    const int max_repairs = std::max(0, opts.max_repairs);
    for (int i = 0; i <= max_repairs; ++i) {
        auto reply = adapter.complete(prompt, instance.image_path);
        if (!reply) return fail(LoopError{LoopErrorKind::Adapter, reply.error().message, std::move(trace)});
        trace.attempts.push_back(evaluate_draft(*reply, instance.meta, opts));
        const Attempt& a = trace.attempts.back();
        if (a.clean() || i == max_repairs) break;
        prompt = repair_prompt(instance.problem, a.response, problems_of(a));
    }
    if (trace.best_attempt() == nullptr) {
        const std::string last = trace.attempts.back().error.value_or("no usable draft");
        return fail(LoopError{LoopErrorKind::Exhausted,
                              "no parseable draft after " + std::to_string(trace.attempts.size()) +
                                  " attempt(s); last: " + last,
                              std::move(trace)});
    }
    return trace;
}

verify::VerificationReport leakage_guard(const DraftTrace& trace, const verify::ProblemMeta& meta) {
    if (!trace.final_answer) return verify::make_report({}, 1.0, {"leakage guard skipped: no final answer"});
    const auto value = parse_answer_number(*trace.final_answer);
    if (!value) {
        return verify::make_report({}, 1.0,
                                   {"leakage guard skipped: answer '" + *trace.final_answer + "' is not numeric"});
    }
    if (!trace.stage2_draft) return verify::make_report({}, 1.0, {"leakage guard skipped: no stage-2 draft"});
    verify::ProblemMeta guarded = meta;
    guarded.answer = *value;
    return verify::make_report(verify::check_leakage(*trace.stage2_draft, guarded), 1.0);
}

Result<DraftTrace, LoopError> run_stage2(DraftTrace trace, const corpus::Instance& instance, ModelAdapter& adapter,
                                         const LoopOptions& opts) {
    const Attempt* best = trace.best_attempt();
    if (best == nullptr) return fail(LoopError{LoopErrorKind::NoDraft, "stage 1 produced no draft", std::move(trace)});
    const dsl::Program draft = *best->draft;
    const std::string explanation = best->explanation;

    std::optional<std::string> image = instance.image_path;
    if (opts.feed_render) {
        if (opts.scratch_dir && best->render) {
            const auto path = *opts.scratch_dir / (instance.id + ".stage1.pgm");
            auto w = write_atomic(path, render::encode_pgm(best->render->raster));
            if (!w) return fail(LoopError{LoopErrorKind::Adapter, w.error(), std::move(trace)});
            image = path.string();
        } else {
            trace.notes.emplace_back("feed-render requested without a scratch directory; render not sent");
        }
    }

    auto reply = adapter.complete(solve_prompt(instance.problem, explanation, draft), image);
    if (!reply) return fail(LoopError{LoopErrorKind::Adapter, reply.error().message, std::move(trace)});
    trace.stage2_response = *reply;

    auto answer = extract_answer(*reply);
    if (!answer) {
        return fail(LoopError{LoopErrorKind::MalformedStage2, "stage-2 response has no 'Answer:' line", std::move(trace)});
    }
    auto ex = extract_dsl(*reply);
    trace.stage2_explanation = ex.explanation;

    std::optional<scene::Scene> sc;
    if (!ex.dsl) {
        trace.notes.emplace_back("stage-2 response has no DSL block; keeping the stage-1 draft");
        trace.stage2_draft = draft;
        sc = scene::build_scene(draft).value();
    } else {
        auto b = build(*ex.dsl, "stage2");
        if (b.error) {
            return fail(LoopError{LoopErrorKind::MalformedStage2, "stage-2 DSL: " + *b.error, std::move(trace)});
        }
        trace.stage2_draft = std::move(b.program);
        sc = std::move(b.scene);
    }
    trace.final_answer = std::move(answer);
    trace.stage2_verification = verify::verify_scene(*trace.stage2_draft, *sc, instance.meta);
    trace.stage2_render = render::render_all(*sc, opts.render);
    trace.leakage = leakage_guard(trace, instance.meta);
    return trace;
}

Result<DraftTrace, LoopError> run_instance(const corpus::Instance& instance, ModelAdapter& adapter,
                                           const LoopOptions& opts) {
    auto s1 = run_stage1(instance, adapter, opts);
    if (!s1) return s1;
    return run_stage2(std::move(s1).value(), instance, adapter, opts);
}

}  // namespace bardsl::twd

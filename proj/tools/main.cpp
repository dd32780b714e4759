// bardsl command-line entry point.
//
// Exit codes: 0 success, 1 verification failures present, 2 usage error,
// 3 I/O or transport error.

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "bardsl/corpus/manifest.hpp"
#include "bardsl/corpus/stats.hpp"
#include "bardsl/dsl/macros.hpp"
#include "bardsl/dsl/number.hpp"
#include "bardsl/dsl/parser.hpp"
#include "bardsl/dsl/printer.hpp"
#include "bardsl/judge/judge.hpp"
#include "bardsl/metrics/score.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/scene/scene.hpp"
#include "bardsl/twd/loop.hpp"
#include "bardsl/twd/prompts.hpp"
#include "bardsl/twd/trace_io.hpp"
#include "bardsl/verify/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bardsl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

/// Reported failure with the exit code it maps to.
struct CliError {
    int code;
    std::string message;
};

template <typename T>
using Cli = Result<T, CliError>;

Cli<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(CliError{kExitIo, "cannot read " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

void print_json(const json& j) { std::cout << verify::dump_json(j, 2) << "\n"; }

json parse_error_json(const dsl::ParseError& e) {
    return json{{"line", e.line}, {"column", e.column}, {"kind", dsl::to_string(e.kind)}, {"message", e.message}};
}

/// Parsed, optionally expanded program. Errors are exit 1 (the input is not a valid diagram).
Cli<dsl::Program> load_program(const std::string& path, bool expand) {
    auto text = read_file(path);
    if (!text) return fail(std::move(text).error());
    auto p = dsl::parse(*text, path);
    if (!p) return fail(CliError{kExitVerify, p.error().format(path)});
    if (!expand) return std::move(p).value();
    auto e = dsl::expand_macros(*p);
    if (!e) {
        return fail(CliError{kExitVerify, path + ": " + dsl::to_string(e.error().kind) + ": " + e.error().message});
    }
    return std::move(e).value();
}

Cli<scene::Scene> load_scene(const dsl::Program& p, const std::string& path) {
    auto s = scene::build_scene(p);
    if (!s) return fail(CliError{kExitVerify, path + ": " + scene::to_string(s.error().kind) + ": " + s.error().message});
    return std::move(s).value();
}

struct MetaFile {
    verify::ProblemMeta meta;
    std::string problem;
    std::optional<std::string> id;
};

Cli<MetaFile> load_meta(const std::string& path) {
    auto text = read_file(path);
    if (!text) return fail(std::move(text).error());
    const json j = json::parse(*text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail(CliError{kExitUsage, path + ": meta file must be a JSON object"});
    auto m = verify::meta_from_json(j);
    if (!m) return fail(CliError{kExitUsage, path + ": " + m.error()});
    MetaFile out{std::move(m).value(), {}, {}};
    if (j.contains("problem") && j["problem"].is_string()) out.problem = j["problem"].get<std::string>();
    if (j.contains("id") && j["id"].is_string()) out.id = j["id"].get<std::string>();
    return out;
}

Cli<render::RenderConfig> load_render_config(const std::string& path) {
    if (path.empty()) return render::RenderConfig{};
    auto text = read_file(path);
    if (!text) return fail(std::move(text).error());
    auto cfg = render::parse_config(*text);
    if (!cfg) return fail(CliError{kExitUsage, path + ": " + cfg.error()});
    return std::move(cfg).value();
}

Cli<bool> write_out(const fs::path& path, const std::string& bytes) {
    auto w = twd::write_atomic(path, bytes);
    if (!w) return fail(CliError{kExitIo, w.error()});
    return true;
}

int report(const CliError& e) {
    std::cerr << "bardsl: " << e.message << "\n";
    return e.code;
}

/// Runs fn(i) for i in [0, n) on at most `jobs` threads.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
    };
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

// ---- judge options shared by score, twd and judge ----

struct JudgeOpts {
    std::string mode = "off";
    std::string fixtures;
    std::string url;
    std::string model;
    std::string key_env = "BARDSL_JUDGE_API_KEY";
    double timeout_s = 60;
    int retries = 3;

    void attach(CLI::App* app, bool allow_off = true) {
        app->add_option("--judge", mode, "judge mode")
            ->check(allow_off ? CLI::IsMember({"off", "stub", "live"}) : CLI::IsMember({"stub", "live"}));
        app->add_option("--judge-fixtures", fixtures, "directory of stub transcripts <id>.txt");
        app->add_option("--judge-url", url, "chat-completions endpoint URL");
        app->add_option("--judge-model", model, "judge model name");
        app->add_option("--judge-key-env", key_env, "environment variable holding the judge key");
        app->add_option("--judge-timeout", timeout_s, "request timeout in seconds");
        app->add_option("--judge-retries", retries, "retries on transport failures");
    }

    [[nodiscard]] judge::JudgeConfig config(int concurrency) const {
        judge::JudgeConfig c;
        c.mode = judge::mode_from_string(mode).value_or(judge::Mode::Off);
        c.fixture_dir = fixtures;
        c.endpoint_url = url;
        c.model_name = model;
        c.api_key_env_var = key_env;
        c.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
        c.max_retries = retries;
        c.concurrency = std::max(1, concurrency);
        return c;
    }
};

int judge_error_code(const judge::JudgeError& e) {
    switch (e.kind) {
        case judge::JudgeErrorKind::Transport:
        case judge::JudgeErrorKind::Timeout: return kExitIo;
        case judge::JudgeErrorKind::Config: return kExitUsage;
        default: return kExitVerify;
    }
}

// ---- subcommands ----

struct ParseCmd {
    std::string file;
    bool json_out = false;

    int run() const {
        auto p = [&]() -> Cli<dsl::Program> {
            auto text = read_file(file);
            if (!text) return fail(std::move(text).error());
            auto r = dsl::parse(*text, file);
            if (!r) {
                if (json_out) print_json(json{{"ok", false}, {"error", parse_error_json(r.error())}});
                return fail(CliError{kExitVerify, r.error().format(file)});
            }
            return std::move(r).value();
        }();
        if (!p) return report(p.error());
        const std::string canon = dsl::canonical_print(*p);
        if (json_out) {
            print_json(json{{"ok", true}, {"statements", p->statements.size()}, {"canonical", canon}});
        } else {
            std::cout << canon;
        }
        return kExitOk;
    }
};

struct FmtCmd {
    std::string file;
    std::string out;
    bool expand = false;

    int run() const {
        auto p = load_program(file, expand);
        if (!p) return report(p.error());
        const std::string canon = dsl::canonical_print(*p);
        if (out.empty()) {
            std::cout << canon;
            return kExitOk;
        }
        auto w = write_out(out, canon);
        return w ? kExitOk : report(w.error());
    }
};

struct CheckCmd {
    std::string file;
    std::string meta;
    bool json_out = false;

    int run() const {
        std::optional<verify::ProblemMeta> m;
        if (!meta.empty()) {
            auto mf = load_meta(meta);
            if (!mf) return report(mf.error());
            m = mf->meta;
        }
        auto p = load_program(file, true);
        if (!p) {
            if (json_out && p.error().code == kExitVerify) print_json(json{{"ok", false}, {"error", p.error().message}});
            return report(p.error());
        }
        auto r = verify::verify(*p, m);
        if (!r) {
            return report(CliError{kExitVerify, file + ": " + scene::to_string(r.error().kind) + ": " + r.error().message});
        }
        if (json_out) {
            print_json(verify::to_json(*r));
        } else {
            std::cout << verify::to_text(*r);
        }
        return r->has_critical() ? kExitVerify : kExitOk;
    }
};

struct RenderCmd {
    std::string file;
    bool svg = false;
    bool pgm = false;
    bool ggb = false;
    std::string out;
    std::string config;

    int run() const {
        if (!svg && !pgm && !ggb) return report(CliError{kExitUsage, "render: pick at least one of --svg, --pgm, --ggb"});
        auto cfg = load_render_config(config);
        if (!cfg) return report(cfg.error());
        auto p = load_program(file, true);
        if (!p) return report(p.error());
        auto s = load_scene(*p, file);
        if (!s) return report(s.error());

        std::vector<std::pair<std::string, std::string>> artifacts;  // extension, bytes
        if (svg) artifacts.emplace_back(".svg", render::render_svg(*s, *cfg));
        if (pgm) artifacts.emplace_back(".pgm", render::encode_pgm(render::render_raster(*s, *cfg)));
        if (ggb) artifacts.emplace_back(".ggb.txt", render::export_geogebra(*s));

        if (out.empty()) {
            if (artifacts.size() > 1) return report(CliError{kExitUsage, "render: several formats need --out <dir>"});
            std::cout << artifacts.front().second;
            return kExitOk;
        }
        const fs::path target(out);
        const bool single_file = artifacts.size() == 1 && target.has_extension() && !fs::is_directory(target);
        for (const auto& [ext, bytes] : artifacts) {
            const fs::path path = single_file ? target : target / (stem_of(file) + ext);
            auto w = write_out(path, bytes);
            if (!w) return report(w.error());
        }
        return kExitOk;
    }
};

struct ExportCmd {
    std::string file;
    std::string out;

    int run() const {
        auto p = load_program(file, true);
        if (!p) return report(p.error());
        auto s = load_scene(*p, file);
        if (!s) return report(s.error());
        const std::string script = render::export_geogebra(*s);
        if (out.empty()) {
            std::cout << script;
            return kExitOk;
        }
        auto w = write_out(out, script);
        return w ? kExitOk : report(w.error());
    }
};

struct ScoreCmd {
    std::string candidate;
    std::string reference;
    std::string meta;
    std::string id;
    std::string manifest;
    std::string candidates_dir;
    std::string out;
    std::string config;
    bool json_out = false;
    bool csv_out = false;
    int jobs = 1;
    JudgeOpts judge_opts;

    int run() const {
        auto cfg = load_render_config(config);
        if (!cfg) return report(cfg.error());
        if (!manifest.empty()) return run_manifest(*cfg);
        if (candidate.empty() || reference.empty()) {
            return report(CliError{kExitUsage, "score: need --candidate and --reference, or --manifest"});
        }
        auto cand = load_program(candidate, true);
        if (!cand) return report(cand.error());
        auto ref = load_program(reference, true);
        if (!ref) return report(ref.error());

        std::optional<verify::ProblemMeta> m;
        corpus::Instance inst;
        inst.id = id.empty() ? stem_of(candidate) : id;
        if (!meta.empty()) {
            auto mf = load_meta(meta);
            if (!mf) return report(mf.error());
            m = mf->meta;
            inst.meta = mf->meta;
            inst.problem = mf->problem;
            if (id.empty() && mf->id) inst.id = *mf->id;
        }
        inst.program = *ref;

        auto r = score_one(*cand, *ref, m, inst, *cfg);
        if (!r) return report(r.error());
        emit_single(inst.id, *r);
        return kExitOk;
    }

private:
    Cli<metrics::ScoreReport> score_one(const dsl::Program& cand, const dsl::Program& ref,
                                        const std::optional<verify::ProblemMeta>& m, const corpus::Instance& inst,
                                        const render::RenderConfig& cfg) const {
        const auto jcfg = judge_opts.config(1);
        if (jcfg.mode == judge::Mode::Off) {
            auto r = metrics::score_pair(cand, ref, m, cfg);
            if (!r) return fail(CliError{kExitVerify, r.error().stage + ": " + r.error().message});
            return std::move(r).value();
        }
        auto transport = judge::make_transport(jcfg);
        if (!transport) return fail(CliError{kExitUsage, transport.error().message});
        std::optional<judge::JudgeError> judge_failure;
        metrics::DimsProvider provider = [&](const dsl::Program& c) -> Result<verify::Dims, std::string> {
            auto d = judge::judge_dims(inst, c, jcfg, **transport);
            if (!d) {
                judge_failure = d.error();
                return fail(std::string(judge::to_string(d.error().kind)) + ": " + d.error().message);
            }
            return *d;
        };
        auto r = metrics::score_pair(cand, ref, m, cfg, metrics::DimsSource::Judge, provider);
        if (!r) {
            const int code = judge_failure ? judge_error_code(*judge_failure) : kExitVerify;
            return fail(CliError{code, r.error().stage + ": " + r.error().message});
        }
        return std::move(r).value();
    }

    void emit_single(const std::string& rid, const metrics::ScoreReport& r) const {
        if (json_out) {
            json j = metrics::to_json(r);
            j["id"] = rid;
            print_json(j);
        } else if (csv_out) {
            std::cout << metrics::csv_header() << "\n" << metrics::to_csv_row(rid, r) << "\n";
        } else {
            std::cout << "id " << rid << "\n"
                      << "bleu " << dsl::format_fixed(r.bleu, 4) << "\nrouge_l " << dsl::format_fixed(r.rouge_l, 4)
                      << "\nchrf " << dsl::format_fixed(r.chrf, 4) << "\nlpips NA\nssim " << dsl::format_fixed(r.ssim, 4)
                      << "\npsnr " << dsl::format_fixed(r.psnr, 4) << "\nalign " << r.dims.align << "\ncover "
                      << r.dims.cover << "\nnum " << r.dims.num << "\nnorm " << r.dims.norm << "\nleak " << r.dims.leak
                      << "\njudge_avg " << dsl::format_fixed(r.judge_avg, 4) << "\ncomposite "
                      << (r.composite ? dsl::format_fixed(metrics::round2(*r.composite), 2) : std::string("NA"))
                      << "\n";
        }
    }

    int run_manifest(const render::RenderConfig& cfg) const {
        auto man = corpus::load_manifest(manifest);
        if (!man) return report(CliError{kExitIo, manifest + ": " + man.error().cause});
        for (const auto& f : man->failures) std::cerr << manifest << ":" << f.line << ": " << f.cause << "\n";

        const auto& insts = man->instances;
        std::vector<std::optional<dsl::Program>> cands(insts.size());
        std::vector<std::string> load_errors(insts.size());
        for (std::size_t i = 0; i < insts.size(); ++i) {
            if (candidates_dir.empty()) {
                cands[i] = insts[i].program;
                continue;
            }
            auto c = load_program((fs::path(candidates_dir) / (insts[i].id + ".bardsl")).string(), true);
            if (c) {
                cands[i] = std::move(c).value();
            } else {
                load_errors[i] = c.error().message;
            }
        }

        std::vector<metrics::ScoreResult> results;
        const auto jcfg = judge_opts.config(jobs);
        if (jcfg.mode == judge::Mode::Off) {
            std::vector<metrics::ScoreJob> batch;
            std::vector<std::size_t> index;
            for (std::size_t i = 0; i < insts.size(); ++i) {
                if (!cands[i]) continue;
                batch.push_back({&*cands[i], &insts[i].program, insts[i].meta});
                index.push_back(i);
            }
            auto scored = metrics::score_batch(batch, cfg, jobs);
            results.assign(insts.size(), fail(metrics::ScoreError{"load", ""}));
            for (std::size_t k = 0; k < index.size(); ++k) results[index[k]] = std::move(scored[k]);
        } else {
            auto transport = judge::make_transport(jcfg);
            if (!transport) return report(CliError{kExitUsage, transport.error().message});
            std::vector<std::optional<metrics::ScoreResult>> slots(insts.size());
            parallel_for(insts.size(), jobs, [&](std::size_t i) {
                if (!cands[i]) {
                    slots[i].emplace(fail(metrics::ScoreError{"load", ""}));
                    return;
                }
                metrics::DimsProvider provider = [&](const dsl::Program& c) -> Result<verify::Dims, std::string> {
                    auto d = judge::judge_dims(insts[i], c, jcfg, **transport);
                    if (!d) return fail(std::string(judge::to_string(d.error().kind)) + ": " + d.error().message);
                    return *d;
                };
                slots[i].emplace(metrics::score_pair(*cands[i], insts[i].program, insts[i].meta, cfg,
                                                     metrics::DimsSource::Judge, provider));
            });
            for (auto& s : slots) results.push_back(std::move(*s));
        }
        for (std::size_t i = 0; i < insts.size(); ++i) {
            if (!results[i] && !load_errors[i].empty()) results[i].error().message = load_errors[i];
        }

        json records = json::array();
        std::string csv = metrics::csv_header() + "\n";
        for (std::size_t i = 0; i < insts.size(); ++i) {
            json rec;
            rec["id"] = insts[i].id;
            if (results[i]) {
                rec["report"] = metrics::to_json(*results[i]);
                csv += metrics::to_csv_row(insts[i].id, *results[i]) + "\n";
            } else {
                rec["error"] = {{"stage", results[i].error().stage}, {"message", results[i].error().message}};
                std::cerr << insts[i].id << ": " << results[i].error().stage << ": " << results[i].error().message
                          << "\n";
            }
            if (!out.empty()) {
                auto w = write_out(fs::path(out) / (insts[i].id + ".score.json"), verify::dump_json(rec, 2) + "\n");
                if (!w) return report(w.error());
            }
            records.push_back(std::move(rec));
        }
        const auto summary = metrics::summarize(results);
        if (json_out) {
            json s = metrics::to_json(summary.mean);
            print_json(json{{"records", records},
                            {"summary", {{"count", summary.count}, {"failures", summary.failures}, {"mean", s}}}});
        } else if (csv_out) {
            std::cout << csv;
        } else {
            std::cout << metrics::summary_table(summary);
        }
        return summary.failures == 0 ? kExitOk : kExitVerify;
    }
};

struct StatsCmd {
    std::string manifest;
    bool json_out = false;

    int run() const {
        auto man = corpus::load_manifest(manifest);
        if (!man) return report(CliError{kExitIo, manifest + ": " + man.error().cause});
        for (const auto& f : man->failures) std::cerr << manifest << ":" << f.line << ": " << f.cause << "\n";
        const auto s = corpus::stats(man->instances);
        if (json_out) {
            auto j = corpus::to_json(s);
            j["failures"] = man->failures.size();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << corpus::stats_table(s);
        }
        return kExitOk;
    }
};

/// `{"<id>": ["response 1", "response 2", ...], ...}`
Cli<std::map<std::string, std::vector<std::string>>> load_script(const std::string& path) {
    auto text = read_file(path);
    if (!text) return fail(std::move(text).error());
    const json j = json::parse(*text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return fail(CliError{kExitUsage, path + ": script must map instance ids to arrays of responses"});
    }
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_array()) return fail(CliError{kExitUsage, path + ": entry '" + k + "' must be an array"});
        for (const auto& r : v) {
            if (!r.is_string()) return fail(CliError{kExitUsage, path + ": entry '" + k + "' must hold strings"});
            out[k].push_back(r.get<std::string>());
        }
    }
    return out;
}

struct TwdCmd {
    std::string manifest;
    std::string adapter = "scripted";
    std::string script;
    std::string url;
    std::string model;
    std::string key_env = "BARDSL_MODEL_API_KEY";
    double timeout_s = 120;
    int max_repairs = 2;
    std::string out;
    std::string config;
    bool feed_render = false;
    bool json_out = false;
    int jobs = 1;
    JudgeOpts judge_opts;

    int run() const {
        auto cfg = load_render_config(config);
        if (!cfg) return report(cfg.error());
        if (max_repairs < 0) return report(CliError{kExitUsage, "twd run: --max-repairs must be >= 0"});
        auto man = corpus::load_manifest(manifest);
        if (!man) return report(CliError{kExitIo, manifest + ": " + man.error().cause});
        for (const auto& f : man->failures) std::cerr << manifest << ":" << f.line << ": " << f.cause << "\n";
        const auto& insts = man->instances;

        std::map<std::string, std::vector<std::string>> scripts;
        if (adapter == "scripted") {
            if (script.empty()) return report(CliError{kExitUsage, "twd run: --adapter scripted needs --script"});
            auto s = load_script(script);
            if (!s) return report(s.error());
            scripts = std::move(s).value();
        } else if (url.empty() || model.empty()) {
            return report(CliError{kExitUsage, "twd run: --adapter http needs --url and --model"});
        }

        const auto jcfg = judge_opts.config(jobs);
        std::unique_ptr<judge::ChatTransport> transport;
        if (jcfg.mode != judge::Mode::Off) {
            auto t = judge::make_transport(jcfg);
            if (!t) return report(CliError{kExitUsage, t.error().message});
            transport = std::move(t).value();
        }

        twd::LoopOptions opts;
        opts.max_repairs = max_repairs;
        opts.feed_render = feed_render;
        opts.render = *cfg;
        if (!out.empty()) opts.scratch_dir = fs::path(out);

        struct Outcome {
            int code = kExitOk;
            json record;
        };
        std::vector<Outcome> outcomes(insts.size());
        parallel_for(insts.size(), jobs, [&](std::size_t i) {
            const auto& inst = insts[i];
            std::unique_ptr<twd::ModelAdapter> model_adapter;
            if (adapter == "scripted") {
                const auto it = scripts.find(inst.id);
                model_adapter = std::make_unique<twd::ScriptedAdapter>(it == scripts.end() ? std::vector<std::string>{}
                                                                                           : it->second);
            } else {
                model_adapter = std::make_unique<twd::HttpAdapter>(
                    chat::Endpoint{url, model, key_env, std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000))},
                    twd::kAdapterPreamble);
            }
            Outcome& o = outcomes[i];
            o.record["id"] = inst.id;
            auto r = twd::run_instance(inst, *model_adapter, opts);
            const twd::DraftTrace& trace = r ? *r : r.error().trace;
            if (!r) {
                o.code = r.error().kind == twd::LoopErrorKind::Adapter ? kExitIo : kExitVerify;
                o.record["error"] = {{"kind", twd::to_string(r.error().kind)}, {"message", r.error().message}};
            }
            o.record["attempts"] = trace.attempts.size();
            o.record["final_answer"] = trace.final_answer ? json(*trace.final_answer) : json(nullptr);
            if (trace.stage2_verification) {
                o.record["rubric_score"] = trace.stage2_verification->rubric_score;
                if (trace.stage2_verification->has_critical()) o.code = std::max(o.code, kExitVerify);
            }
            if (trace.leakage) {
                const bool leaked = trace.leakage->has_critical();
                o.record["leakage_guard"] = leaked ? "triggered" : "clean";
                if (leaked) o.code = std::max(o.code, kExitVerify);
            }
            if (transport && trace.stage2_draft) {
                auto v = judge::judge(inst, *trace.stage2_draft, jcfg, *transport);
                if (v) {
                    o.record["judge_score"] = v->final_score;
                } else {
                    o.record["judge_error"] = std::string(judge::to_string(v.error().kind)) + ": " + v.error().message;
                    o.code = std::max(o.code, judge_error_code(v.error()));
                }
            }
            if (!out.empty()) {
                auto w = twd::write_trace_artifacts(trace, out);
                if (!w) {
                    o.code = kExitIo;
                    o.record["write_error"] = w.error();
                }
            }
        });

        int code = kExitOk;
        json records = json::array();
        for (auto& o : outcomes) {
            code = std::max(code, o.code);
            if (!json_out) {
                std::cout << o.record["id"].get<std::string>();
                for (const char* key : {"attempts", "final_answer", "rubric_score", "leakage_guard", "judge_score"}) {
                    if (o.record.contains(key)) std::cout << " " << key << "=" << o.record[key].dump();
                }
                if (o.record.contains("error")) std::cout << " error=" << o.record["error"]["kind"].get<std::string>();
                std::cout << "\n";
            }
            records.push_back(std::move(o.record));
        }
        if (json_out) print_json(json{{"instances", records}});
        return code;
    }
};

struct JudgeCmd {
    std::string manifest;
    std::string candidates_dir;
    bool json_out = false;
    int jobs = 4;
    JudgeOpts judge_opts;

    int run() const {
        auto man = corpus::load_manifest(manifest);
        if (!man) return report(CliError{kExitIo, manifest + ": " + man.error().cause});
        const auto& insts = man->instances;
        const auto jcfg = judge_opts.config(jobs);
        auto transport = judge::make_transport(jcfg);
        if (!transport) return report(CliError{kExitUsage, transport.error().message});

        std::vector<dsl::Program> cands;
        cands.reserve(insts.size());
        for (const auto& inst : insts) {
            if (candidates_dir.empty()) {
                cands.push_back(inst.program);
                continue;
            }
            auto c = load_program((fs::path(candidates_dir) / (inst.id + ".bardsl")).string(), true);
            if (!c) return report(c.error());
            cands.push_back(std::move(c).value());
        }
        std::vector<judge::JudgeTask> tasks;
        for (std::size_t i = 0; i < insts.size(); ++i) tasks.push_back({&insts[i], &cands[i]});
        const auto verdicts = judge::judge_batch(tasks, jcfg, **transport);

        int code = kExitOk;
        json records = json::array();
        for (std::size_t i = 0; i < insts.size(); ++i) {
            json rec{{"id", insts[i].id}};
            if (verdicts[i]) {
                const auto& v = *verdicts[i];
                rec["final_score"] = v.final_score;
                rec["dims"] = verify::to_json(judge::dims_from_verdict(v));
                json crit = json::object();
                for (const auto& [n, c] : v.per_criterion) {
                    crit[std::to_string(n)] = {{"name", judge::criterion_name(n)},
                                               {"verdict", c.verdict == judge::Verdict::Pass ? "PASS" : "FAIL"},
                                               {"justification", c.justification}};
                }
                rec["criteria"] = crit;
                if (!json_out) std::cout << insts[i].id << " " << dsl::format_fixed(v.final_score, 2) << "\n";
            } else {
                code = std::max(code, judge_error_code(verdicts[i].error()));
                rec["error"] = {{"kind", judge::to_string(verdicts[i].error().kind)},
                                {"message", verdicts[i].error().message}};
                if (!json_out) {
                    std::cout << insts[i].id << " error " << judge::to_string(verdicts[i].error().kind) << ": "
                              << verdicts[i].error().message << "\n";
                }
            }
            records.push_back(std::move(rec));
        }
        if (json_out) print_json(json{{"verdicts", records}});
        return code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bar-model DSL toolchain: parse, verify, render, score and draft."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "bardsl 0.1.0");

    ParseCmd parse_cmd;
    auto* parse = app.add_subcommand("parse", "Parse a program and print its canonical form");
    parse->add_option("file", parse_cmd.file, "program file")->required();
    parse->add_flag("--json", parse_cmd.json_out, "machine-readable output");

    FmtCmd fmt_cmd;
    auto* fmt = app.add_subcommand("fmt", "Canonically format a program");
    fmt->add_option("file", fmt_cmd.file, "program file")->required();
    fmt->add_flag("--expand", fmt_cmd.expand, "expand CMP macros first");
    fmt->add_option("--out", fmt_cmd.out, "write here instead of stdout");

    CheckCmd check_cmd;
    auto* check = app.add_subcommand("check", "Verify a program against the checklist");
    check->add_option("file", check_cmd.file, "program file")->required();
    check->add_option("--meta", check_cmd.meta, "problem metadata JSON");
    check->add_flag("--json", check_cmd.json_out, "machine-readable output");

    RenderCmd render_cmd;
    auto* rend = app.add_subcommand("render", "Render SVG, PGM raster or GeoGebra script");
    rend->add_option("file", render_cmd.file, "program file")->required();
    rend->add_flag("--svg", render_cmd.svg, "SVG document");
    rend->add_flag("--pgm", render_cmd.pgm, "binary PGM raster");
    rend->add_flag("--ggb", render_cmd.ggb, "GeoGebra script");
    rend->add_option("--out", render_cmd.out, "output file (one format) or directory");
    rend->add_option("--config", render_cmd.config, "render config file");

    ExportCmd export_cmd;
    auto* exp = app.add_subcommand("export", "Export a GeoGebra script");
    exp->add_option("file", export_cmd.file, "program file")->required();
    exp->add_option("--out", export_cmd.out, "output file");

    ScoreCmd score_cmd;
    auto* score = app.add_subcommand("score", "Score a candidate program against a reference");
    score->add_option("--candidate", score_cmd.candidate, "candidate program");
    score->add_option("--reference", score_cmd.reference, "reference program");
    score->add_option("--meta", score_cmd.meta, "problem metadata JSON");
    score->add_option("--id", score_cmd.id, "instance id (judge fixture key)");
    score->add_option("--manifest", score_cmd.manifest, "score every manifest instance");
    score->add_option("--candidates", score_cmd.candidates_dir, "directory of <id>.bardsl candidates");
    score->add_option("--out", score_cmd.out, "directory for per-instance records");
    score->add_option("--config", score_cmd.config, "render config file");
    score->add_option("--jobs", score_cmd.jobs, "parallel pairs")->check(CLI::PositiveNumber);
    score->add_flag("--json", score_cmd.json_out, "machine-readable output");
    score->add_flag("--csv", score_cmd.csv_out, "CSV output");
    score_cmd.judge_opts.attach(score);

    StatsCmd stats_cmd;
    auto* stats = app.add_subcommand("stats", "Corpus statistics for a manifest");
    stats->add_option("--manifest", stats_cmd.manifest, "manifest file")->required();
    stats->add_flag("--json", stats_cmd.json_out, "machine-readable output");

    TwdCmd twd_cmd;
    auto* twd_app = app.add_subcommand("twd", "Thinking-with-drafting loop");
    twd_app->require_subcommand(1);
    auto* twd_run = twd_app->add_subcommand("run", "Run both stages over a manifest");
    twd_run->add_option("--manifest", twd_cmd.manifest, "manifest file")->required();
    twd_run->add_option("--adapter", twd_cmd.adapter, "model adapter")->check(CLI::IsMember({"http", "scripted"}));
    twd_run->add_option("--script", twd_cmd.script, "scripted responses JSON");
    twd_run->add_option("--url", twd_cmd.url, "chat-completions endpoint URL");
    twd_run->add_option("--model", twd_cmd.model, "model name");
    twd_run->add_option("--api-key-env", twd_cmd.key_env, "environment variable holding the model key");
    twd_run->add_option("--timeout", twd_cmd.timeout_s, "request timeout in seconds");
    twd_run->add_option("--max-repairs", twd_cmd.max_repairs, "repair prompts after a failed draft");
    twd_run->add_option("--out", twd_cmd.out, "directory for traces and renders");
    twd_run->add_option("--config", twd_cmd.config, "render config file");
    twd_run->add_flag("--feed-render", twd_cmd.feed_render, "send the stage-1 raster to stage 2");
    twd_run->add_option("--jobs", twd_cmd.jobs, "instances in flight")->check(CLI::PositiveNumber);
    twd_run->add_flag("--json", twd_cmd.json_out, "machine-readable output");
    twd_cmd.judge_opts.attach(twd_run);

    JudgeCmd judge_cmd;
    judge_cmd.judge_opts.mode = "stub";
    auto* judge_app = app.add_subcommand("judge", "Score programs with the LLM judge");
    judge_app->add_option("--manifest", judge_cmd.manifest, "manifest file")->required();
    judge_app->add_option("--candidates", judge_cmd.candidates_dir, "directory of <id>.bardsl candidates");
    judge_app->add_option("--jobs", judge_cmd.jobs, "requests in flight")->check(CLI::PositiveNumber);
    judge_app->add_flag("--json", judge_cmd.json_out, "machine-readable output");
    judge_cmd.judge_opts.attach(judge_app, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << app.help();
        return kExitUsage;
    }

    if (parse->parsed()) return parse_cmd.run();
    if (fmt->parsed()) return fmt_cmd.run();
    if (check->parsed()) return check_cmd.run();
    if (rend->parsed()) return render_cmd.run();
    if (exp->parsed()) return export_cmd.run();
    if (score->parsed()) return score_cmd.run();
    if (stats->parsed()) return stats_cmd.run();
    if (twd_run->parsed()) return twd_cmd.run();
    if (judge_app->parsed()) return judge_cmd.run();
    std::cerr << app.help();
    return kExitUsage;
}

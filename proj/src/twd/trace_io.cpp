#include "bardsl/twd/trace_io.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>

#include "bardsl/dsl/printer.hpp"
#include "bardsl/render/image.hpp"
#include "bardsl/verify/report_io.hpp"

namespace bardsl::twd {

using nlohmann::ordered_json;

namespace {

template <typename T, typename F>
ordered_json opt(const std::optional<T>& v, F&& f) {
    return v ? ordered_json(f(*v)) : ordered_json(nullptr);
}

ordered_json report_json(const verify::VerificationReport& r) {
    return ordered_json::parse(verify::to_json(r).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
}

ordered_json render_summary(const render::RenderOutput& r) {
    return ordered_json{{"svg_bytes", r.svg.size()},
                        {"raster_width", r.raster.width},
                        {"raster_height", r.raster.height},
                        {"geogebra_lines", std::count(r.geogebra.begin(), r.geogebra.end(), '\n')}};
}

auto ident = [](const std::string& s) { return s; };
auto canon = [](const dsl::Program& p) { return dsl::canonical_print(p); };

}  // namespace

ordered_json to_json(const DraftTrace& t) {
    ordered_json j;
    j["instance_id"] = t.instance_id;
    ordered_json attempts = ordered_json::array();
    for (const auto& a : t.attempts) {
        ordered_json aj;
        aj["response"] = a.response;
        aj["explanation"] = a.explanation;
        aj["dsl"] = opt(a.dsl_text, ident);
        aj["draft"] = opt(a.draft, canon);
        aj["error"] = opt(a.error, ident);
        aj["verification"] = opt(a.verification, report_json);
        aj["render"] = opt(a.render, render_summary);
        attempts.push_back(std::move(aj));
    }
    j["attempts"] = std::move(attempts);
    ordered_json s2;
    s2["response"] = opt(t.stage2_response, ident);
    s2["explanation"] = opt(t.stage2_explanation, ident);
    s2["draft"] = opt(t.stage2_draft, canon);
    s2["verification"] = opt(t.stage2_verification, report_json);
    s2["render"] = opt(t.stage2_render, render_summary);
    j["stage2"] = std::move(s2);
    j["final_answer"] = opt(t.final_answer, ident);
    j["leakage"] = opt(t.leakage, report_json);
    j["notes"] = t.notes;
    return j;
}

Result<bool, std::string> write_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return fail("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) return fail("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) return fail("cannot rename " + tmp.string() + ": " + ec.message());
    return true;
}

Result<bool, std::string> write_trace_artifacts(const DraftTrace& t, const std::filesystem::path& dir) {
    const std::string ordered = to_json(t).dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
    if (auto w = write_atomic(dir / (t.instance_id + ".trace.json"), ordered); !w) return w;
    const render::RenderOutput* final_render = nullptr;
    if (t.stage2_render) {
        final_render = &*t.stage2_render;
    } else if (const Attempt* a = t.best_attempt(); a != nullptr && a->render) {
        final_render = &*a->render;
    }
    if (final_render != nullptr) {
        if (auto w = write_atomic(dir / (t.instance_id + ".svg"), final_render->svg); !w) return w;
        if (auto w = write_atomic(dir / (t.instance_id + ".pgm"), render::encode_pgm(final_render->raster)); !w) {
            return w;
        }
    }
    return true;
}

}  // namespace bardsl::twd

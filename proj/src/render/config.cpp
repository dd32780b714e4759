#include "bardsl/render/config.hpp"

#include <charconv>

namespace bardsl::render {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool to_int(std::string_view s, int& out) {
    s = trim(s);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Result<RenderConfig, std::string> validate(const RenderConfig& cfg) {
    const std::pair<const char*, int> dims[] = {
        {"unit_px", cfg.unit_px},           {"row_pitch_px", cfg.row_pitch_px},
        {"bar_height_px", cfg.bar_height_px}, {"margin_px", cfg.margin_px},
        {"dash_on_px", cfg.dash_on_px},     {"dash_off_px", cfg.dash_off_px},
        {"brace_offset_px", cfg.brace_offset_px}, {"brace_depth_px", cfg.brace_depth_px},
        {"glyph_w_px", cfg.glyph_w_px},     {"glyph_h_px", cfg.glyph_h_px},
    };
    for (const auto& [name, v] : dims) {
        if (v <= 0) return fail(std::string(name) + " must be positive");
    }
    return cfg;
}

Result<RenderConfig, std::string> parse_config(std::string_view text) {
    RenderConfig cfg;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) return fail(where + "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "dash_pattern") {
            const auto comma = value.find(',');
            if (comma == std::string_view::npos || !to_int(value.substr(0, comma), cfg.dash_on_px) ||
                !to_int(value.substr(comma + 1), cfg.dash_off_px)) {
                return fail(where + "dash_pattern expects two integers 'on,off'");
            }
            continue;
        }
        int v = 0;
        if (!to_int(value, v)) return fail(where + "value for '" + key + "' is not an integer");
        if (key == "unit_px") cfg.unit_px = v;
        else if (key == "row_pitch_px") cfg.row_pitch_px = v;
        else if (key == "bar_height_px") cfg.bar_height_px = v;
        else if (key == "margin_px") cfg.margin_px = v;
        else if (key == "dash_on_px") cfg.dash_on_px = v;
        else if (key == "dash_off_px") cfg.dash_off_px = v;
        else if (key == "brace_offset_px") cfg.brace_offset_px = v;
        else if (key == "brace_depth_px") cfg.brace_depth_px = v;
        else if (key == "glyph_w_px") cfg.glyph_w_px = v;
        else if (key == "glyph_h_px") cfg.glyph_h_px = v;
        else if (key == "raster_background" || key == "raster_ink") {
            if (v < 0 || v > 255) return fail(where + key + " must be within 0..255");
            (key == "raster_background" ? cfg.raster_background : cfg.raster_ink) = static_cast<std::uint8_t>(v);
        } else {
            return fail(where + "unknown key '" + key + "'");
        }
    }
    return validate(cfg);
}

}  // namespace bardsl::render

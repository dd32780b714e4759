#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bardsl/result.hpp"

namespace bardsl::render {

/// Pixel geometry of the renderer. The defaults are the canonical
/// configuration every golden file is produced with.
struct RenderConfig {
    int unit_px = 40;
    int row_pitch_px = 60;
    int bar_height_px = 18;
    int margin_px = 20;
    int dash_on_px = 6;
    int dash_off_px = 4;
    int brace_offset_px = 8;
    int brace_depth_px = 6;
    int glyph_w_px = 7;
    int glyph_h_px = 12;
    std::uint8_t raster_background = 255;
    std::uint8_t raster_ink = 0;

    bool operator==(const RenderConfig&) const = default;
};

/// Parses `key = value` lines (`#` comments allowed) on top of the defaults.
/// `dash_pattern = 6,4` sets both dash fields.
Result<RenderConfig, std::string> parse_config(std::string_view text);

Result<RenderConfig, std::string> validate(const RenderConfig& cfg);

}  // namespace bardsl::render

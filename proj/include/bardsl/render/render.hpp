#pragma once

#include <string>

#include "bardsl/render/config.hpp"
#include "bardsl/render/image.hpp"
#include "bardsl/render/layout.hpp"
#include "bardsl/scene/scene.hpp"

namespace bardsl::render {

/// Byte-stable SVG 1.1 (rect, line, polyline, text). Attributes are written
/// in alphabetical order and numbers with at most two decimals.
std::string render_svg(const scene::Scene& s, const RenderConfig& cfg = {});

/// Same geometry on a background grid: integer scanline fills, integer line
/// stepping, labels as solid glyph-cell blocks. No anti-aliasing.
GrayImage render_raster(const scene::Scene& s, const RenderConfig& cfg = {});

/// GeoGebra classic script, one command per line, y = -row.
std::string export_geogebra(const scene::Scene& s);

struct RenderOutput {
    std::string svg;
    GrayImage raster;
    std::string geogebra;

    bool operator==(const RenderOutput&) const = default;
};

RenderOutput render_all(const scene::Scene& s, const RenderConfig& cfg = {});

}  // namespace bardsl::render

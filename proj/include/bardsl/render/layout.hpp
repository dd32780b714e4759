#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bardsl/render/config.hpp"
#include "bardsl/scene/scene.hpp"

namespace bardsl::render {

struct Point {
    double x = 0;
    double y = 0;
};

/// Axis-aligned box in canvas pixels, [x, x+w) x [y, y+h).
struct RectShape {
    double x = 0, y = 0, w = 0, h = 0;
    bool filled = true;  ///< solid segment; otherwise a dashed outline
};

struct LineShape {
    Point a, b;
    bool dashed = false;
};

struct PolylineShape {
    std::vector<Point> points;
};

enum class TextAnchor { Start, Middle, End };

/// A label. Its extent is len(text) glyph cells wide and one glyph high.
struct TextShape {
    std::string text;
    double anchor_x = 0;
    double top = 0;
    TextAnchor anchor = TextAnchor::Start;
    double width = 0;
    double height = 0;

    [[nodiscard]] double left() const;
};

using Shape = std::variant<RectShape, LineShape, PolylineShape, TextShape>;

struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Canvas geometry shared by the SVG and raster back ends. Shapes are in
/// emission order: bars by row, then links, horizontal braces, vertical
/// braces, then texts.
struct Layout {
    std::vector<Shape> shapes;
    Box content;  ///< bounds of all shapes
    Box canvas;   ///< integer viewBox: content + margin, always containing the origin
};

/// Vertical overhang of segment ticks beyond the bar, in pixels.
inline constexpr int kTickOverhangPx = 2;

Layout layout_scene(const scene::Scene& s, const RenderConfig& cfg);

}  // namespace bardsl::render

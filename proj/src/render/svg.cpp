#include <algorithm>
#include <utility>
#include <vector>

#include "bardsl/dsl/number.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/text/unicode.hpp"

namespace bardsl::render {

namespace {

constexpr const char* kInk = "#000000";
constexpr const char* kBarFill = "#d9d9d9";

std::string num(double v) { return dsl::format_fixed(v, 2); }

std::string xml_escape(std::string_view raw) {
    std::string out;
    for (char32_t c : text::decode_utf8(raw)) {
        switch (c) {
            case U'&': out += "&amp;"; break;
            case U'<': out += "&lt;"; break;
            case U'>': out += "&gt;"; break;
            case U'"': out += "&quot;"; break;
            case U'\'': out += "&apos;"; break;
            default: {
                const bool xml_char = c == 0x9 || c == 0xA || c == 0xD || (c >= 0x20 && c <= 0xD7FF) ||
                                      (c >= 0xE000 && c <= 0xFFFD) || c >= 0x10000;
                out += text::encode_utf8(std::u32string(1, xml_char ? c : char32_t{0xFFFD}));
            }
        }
    }
    return out;
}

using Attrs = std::vector<std::pair<std::string, std::string>>;

std::string element(const char* name, Attrs attrs, const std::string* body = nullptr) {
    std::sort(attrs.begin(), attrs.end());
    std::string out = "<";
    out += name;
    for (const auto& [k, v] : attrs) out += " " + k + "=\"" + v + "\"";
    if (body == nullptr) return out + "/>\n";
    return out + ">" + *body + "</" + name + ">\n";
}

}  // namespace

std::string render_svg(const scene::Scene& s, const RenderConfig& cfg) {
    const Layout layout = layout_scene(s, cfg);
    const Box& c = layout.canvas;
    const std::string w = num(c.x1 - c.x0);
    const std::string h = num(c.y1 - c.y0);
    const std::string dash = std::to_string(cfg.dash_on_px) + "," + std::to_string(cfg.dash_off_px);

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg height=\"" + h + "\" viewBox=\"" + num(c.x0) + " " + num(c.y0) + " " + w + " " + h + "\" width=\"" +
           w + "\" xmlns=\"http://www.w3.org/2000/svg\">\n";
    out += element("rect", {{"fill", "#ffffff"}, {"height", h}, {"width", w}, {"x", num(c.x0)}, {"y", num(c.y0)}});

    for (const auto& shape : layout.shapes) {
        if (const auto* r = std::get_if<RectShape>(&shape)) {
            Attrs a{{"height", num(r->h)}, {"stroke", kInk}, {"width", num(r->w)}, {"x", num(r->x)}, {"y", num(r->y)}};
            if (r->filled) {
                a.emplace_back("fill", kBarFill);
            } else {
                a.emplace_back("fill", "none");
                a.emplace_back("stroke-dasharray", dash);
            }
            out += element("rect", std::move(a));
        } else if (const auto* l = std::get_if<LineShape>(&shape)) {
            Attrs a{{"stroke", kInk},       {"stroke-width", "1"}, {"x1", num(l->a.x)},
                    {"x2", num(l->b.x)},    {"y1", num(l->a.y)},   {"y2", num(l->b.y)}};
            if (l->dashed) a.emplace_back("stroke-dasharray", dash);
            out += element("line", std::move(a));
        } else if (const auto* p = std::get_if<PolylineShape>(&shape)) {
            std::string pts;
            for (const auto& pt : p->points) pts += (pts.empty() ? "" : " ") + num(pt.x) + "," + num(pt.y);
            out += element("polyline", {{"fill", "none"}, {"points", pts}, {"stroke", kInk}, {"stroke-width", "1"}});
        } else if (const auto* t = std::get_if<TextShape>(&shape)) {
            const char* anchor = t->anchor == TextAnchor::Start ? "start"
                                 : t->anchor == TextAnchor::Middle ? "middle"
                                                                   : "end";
            const std::string body = xml_escape(t->text);
            out += element("text",
                           {{"fill", kInk},
                            {"font-family", "monospace"},
                            {"font-size", std::to_string(cfg.glyph_h_px)},
                            {"text-anchor", anchor},
                            {"x", num(t->anchor_x)},
                            {"y", num(t->top + t->height)}},
                           &body);
        }
    }
    out += "</svg>\n";
    return out;
}

RenderOutput render_all(const scene::Scene& s, const RenderConfig& cfg) {
    return {render_svg(s, cfg), render_raster(s, cfg), export_geogebra(s)};
}

}  // namespace bardsl::render

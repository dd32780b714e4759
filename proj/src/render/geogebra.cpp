#include "bardsl/dsl/number.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/text/unicode.hpp"

namespace bardsl::render {

namespace {

std::string num(double v) { return dsl::format_fixed(v, 4); }

std::string pt(double x, double y) { return "(" + num(x) + "," + num(y) + ")"; }

/// GeoGebra string literals cannot escape quotes; splice them in by code point.
std::string ggb_string(std::string_view raw) {
    const std::string clean = text::sanitize_utf8(raw);
    std::string out = "\"";
    for (char c : clean) {
        if (c == '"') {
            out += "\" + UnicodeToLetter(34) + \"";
        } else if (c == '\n' || c == '\r') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out + "\"";
}

constexpr double kBraceBase = 0.15;
constexpr double kBraceApex = 0.35;
constexpr double kBraceLabel = 0.5;

}  // namespace

std::string export_geogebra(const scene::Scene& s) {
    std::string out;
    for (const auto& [row, bar] : s.rows) {
        const double y = -static_cast<double>(row);
        for (std::size_t k = 0; k < bar.segments.size(); ++k) {
            const auto& seg = bar.segments[k];
            const std::string name = "bar" + std::to_string(row) + "_" + std::to_string(k);
            out += name + " = Segment(" + pt(seg.start_x, y) + "," + pt(seg.end_x, y) + ")\n";
            if (seg.style == scene::Stroke::Dashed) out += "SetLineStyle(" + name + ", 1)\n";
        }
        out += "name" + std::to_string(row) + " = Text(" + ggb_string(bar.name) + ", " + pt(-0.5, y) + ")\n";
    }
    for (std::size_t i = 0; i < s.links.size(); ++i) {
        const auto& vl = s.links[i];
        const std::string name = "link" + std::to_string(i);
        out += name + " = Segment(" + pt(vl.x, -static_cast<double>(vl.row0)) + "," +
               pt(vl.x, -static_cast<double>(vl.row1)) + ")\n";
        out += "SetLineStyle(" + name + ", 1)\n";
    }
    for (std::size_t i = 0; i < s.hbraces.size(); ++i) {
        const auto& hb = s.hbraces[i];
        const double sign = hb.side == dsl::Side::North ? 1.0 : -1.0;
        const double y = -static_cast<double>(hb.row);
        const double mx = (hb.x0 + hb.x1) / 2;
        const std::string name = "hbrace" + std::to_string(i);
        out += name + "a = Segment(" + pt(hb.x0, y + sign * kBraceBase) + "," + pt(mx, y + sign * kBraceApex) + ")\n";
        out += name + "b = Segment(" + pt(mx, y + sign * kBraceApex) + "," + pt(hb.x1, y + sign * kBraceBase) + ")\n";
        out += name + "label = Text(" + ggb_string(hb.label) + ", " + pt(mx, y + sign * kBraceLabel) + ")\n";
    }
    for (std::size_t i = 0; i < s.vbraces.size(); ++i) {
        const auto& vb = s.vbraces[i];
        const double y0 = -static_cast<double>(vb.row0);
        const double y1 = -static_cast<double>(vb.row1);
        const double my = (y0 + y1) / 2;
        const std::string name = "vbrace" + std::to_string(i);
        out += name + "a = Segment(" + pt(vb.col, y0) + "," + pt(vb.col + kBraceApex, my) + ")\n";
        out += name + "b = Segment(" + pt(vb.col + kBraceApex, my) + "," + pt(vb.col, y1) + ")\n";
        out += name + "label = Text(" + ggb_string(vb.label) + ", " + pt(vb.col + kBraceLabel + kBraceApex, my) + ")\n";
    }
    return out;
}

}  // namespace bardsl::render

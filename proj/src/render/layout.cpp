#include "bardsl/render/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "bardsl/text/unicode.hpp"

namespace bardsl::render {

double TextShape::left() const {
    switch (anchor) {
        case TextAnchor::Start: return anchor_x;
        case TextAnchor::Middle: return anchor_x - width / 2;
        case TextAnchor::End: return anchor_x - width;
    }
    return anchor_x;
}

namespace {

class Builder {
public:
    Builder(const scene::Scene& s, const RenderConfig& cfg) : s_(s), cfg_(cfg) {}

    Layout run() {
        std::vector<Shape> texts;
        for (const auto& [row, bar] : s_.rows) {
            for (const auto& seg : bar.segments) {
                out_.shapes.emplace_back(RectShape{x_px(seg.start_x), top(row), seg.length * cfg_.unit_px,
                                                   static_cast<double>(cfg_.bar_height_px),
                                                   seg.style == scene::Stroke::Solid});
            }
            for (double b : bar.boundaries) {
                out_.shapes.emplace_back(LineShape{{x_px(b), top(row) - kTickOverhangPx},
                                                   {x_px(b), bottom(row) + kTickOverhangPx},
                                                   false});
            }
            add_text(texts, bar.name, cfg_.margin_px - 4.0, top(row) + (cfg_.bar_height_px - cfg_.glyph_h_px) / 2.0,
                     TextAnchor::End);
        }
        for (const auto& vl : s_.links) {
            out_.shapes.emplace_back(LineShape{{x_px(vl.x), top(vl.row0)}, {x_px(vl.x), bottom(vl.row1)}, true});
        }
        const auto levels = brace_levels();
        const double step = cfg_.brace_depth_px + cfg_.glyph_h_px + 4.0;
        for (std::size_t i = 0; i < s_.hbraces.size(); ++i) {
            const auto& hb = s_.hbraces[i];
            const double x0 = x_px(hb.x0);
            const double x1 = x_px(hb.x1);
            const double mid = (x0 + x1) / 2;
            const double depth = cfg_.brace_depth_px;
            if (hb.side == dsl::Side::North) {
                const double y = top(hb.row) - cfg_.brace_offset_px - levels[i] * step;
                out_.shapes.emplace_back(PolylineShape{{{x0, y + depth}, {x0, y}, {x1, y}, {x1, y + depth}}});
                add_text(texts, hb.label, mid, y - 2.0 - cfg_.glyph_h_px, TextAnchor::Middle);
            } else {
                const double y = bottom(hb.row) + cfg_.brace_offset_px + levels[i] * step;
                out_.shapes.emplace_back(PolylineShape{{{x0, y - depth}, {x0, y}, {x1, y}, {x1, y - depth}}});
                add_text(texts, hb.label, mid, y + 2.0, TextAnchor::Middle);
            }
        }
        for (const auto& vb : s_.vbraces) {
            const double x = x_px(vb.col);
            const double y0 = top(vb.row0);
            const double y1 = bottom(vb.row1);
            const double depth = cfg_.brace_depth_px;
            out_.shapes.emplace_back(PolylineShape{{{x - depth, y0}, {x, y0}, {x, y1}, {x - depth, y1}}});
            add_text(texts, vb.label, x + 4.0, (y0 + y1) / 2 - cfg_.glyph_h_px / 2.0, TextAnchor::Start);
        }
        for (auto& t : texts) out_.shapes.push_back(std::move(t));
        compute_bounds();
        return std::move(out_);
    }

private:
    double x_px(double x) const { return cfg_.margin_px + x * cfg_.unit_px; }
    double top(int row) const { return cfg_.margin_px + static_cast<double>(row) * cfg_.row_pitch_px; }
    double bottom(int row) const { return top(row) + cfg_.bar_height_px; }

    void add_text(std::vector<Shape>& texts, const std::string& label, double ax, double top_y, TextAnchor anchor) const {
        const auto n = text::scalar_count(label);
        if (n == 0) return;
        texts.emplace_back(TextShape{label, ax, top_y, anchor, static_cast<double>(n) * cfg_.glyph_w_px,
                                     static_cast<double>(cfg_.glyph_h_px)});
    }

    /// Stacking level per horizontal brace: within one (row, side), shorter
    /// braces sit closest to the bar and overlapping spans move outward.
    std::vector<int> brace_levels() const {
        std::vector<int> levels(s_.hbraces.size(), 0);
        std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < s_.hbraces.size(); ++i) {
            groups[{s_.hbraces[i].row, static_cast<int>(s_.hbraces[i].side)}].push_back(i);
        }
        for (auto& [key, idx] : groups) {
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                const auto& A = s_.hbraces[a];
                const auto& B = s_.hbraces[b];
                return std::make_tuple(A.x1 - A.x0, A.x0) < std::make_tuple(B.x1 - B.x0, B.x0);
            });
            std::vector<std::vector<std::size_t>> placed;
            for (std::size_t i : idx) {
                const auto& cur = s_.hbraces[i];
                std::size_t level = 0;
                for (; level < placed.size(); ++level) {
                    const bool clash = std::any_of(placed[level].begin(), placed[level].end(), [&](std::size_t j) {
                        const auto& o = s_.hbraces[j];
                        return cur.x0 < o.x1 - dsl::kGridEpsilon && o.x0 < cur.x1 - dsl::kGridEpsilon;
                    });
                    if (!clash) break;
                }
                if (level == placed.size()) placed.emplace_back();
                placed[level].push_back(i);
                levels[i] = static_cast<int>(level);
            }
        }
        return levels;
    }

    void compute_bounds() {
        Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        auto grow = [&](double x, double y) {
            b.x0 = std::min(b.x0, x);
            b.y0 = std::min(b.y0, y);
            b.x1 = std::max(b.x1, x);
            b.y1 = std::max(b.y1, y);
        };
        for (const auto& shape : out_.shapes) {
            if (const auto* r = std::get_if<RectShape>(&shape)) {
                grow(r->x, r->y);
                grow(r->x + r->w, r->y + r->h);
            } else if (const auto* l = std::get_if<LineShape>(&shape)) {
                grow(l->a.x, l->a.y);
                grow(l->b.x, l->b.y);
            } else if (const auto* p = std::get_if<PolylineShape>(&shape)) {
                for (const auto& pt : p->points) grow(pt.x, pt.y);
            } else if (const auto* t = std::get_if<TextShape>(&shape)) {
                grow(t->left(), t->top);
                grow(t->left() + t->width, t->top + t->height);
            }
        }
        if (out_.shapes.empty()) b = {0, 0, 0, 0};
        out_.content = b;
        const double m = cfg_.margin_px;
        out_.canvas = {std::floor(std::min(0.0, b.x0 - m)), std::floor(std::min(0.0, b.y0 - m)), std::ceil(b.x1 + m),
                       std::ceil(b.y1 + m)};
    }

    const scene::Scene& s_;
    const RenderConfig& cfg_;
    Layout out_;
};

}  // namespace

Layout layout_scene(const scene::Scene& s, const RenderConfig& cfg) { return Builder(s, cfg).run(); }

}  // namespace bardsl::render

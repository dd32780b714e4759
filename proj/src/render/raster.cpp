#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bardsl/render/render.hpp"

namespace bardsl::render {

namespace {

class Canvas {
public:
    Canvas(const Box& box, const RenderConfig& cfg)
        : ox_(static_cast<int>(box.x0)),
          oy_(static_cast<int>(box.y0)),
          img_(static_cast<int>(box.x1 - box.x0), static_cast<int>(box.y1 - box.y0), cfg.raster_background),
          ink_(cfg.raster_ink),
          dash_on_(cfg.dash_on_px),
          dash_period_(cfg.dash_on_px + cfg.dash_off_px) {}

    static int snap(double v) { return static_cast<int>(std::lround(v)); }
    static int lo(double v) { return static_cast<int>(std::floor(v)); }
    static int hi(double v) { return static_cast<int>(std::ceil(v)); }

    void plot(int x, int y) {
        const int px = x - ox_;
        const int py = y - oy_;
        if (img_.contains(px, py)) img_.at(px, py) = ink_;
    }

    /// Fills pixels [x0, x1) x [y0, y1), at least one in each direction.
    void fill(int x0, int y0, int x1, int y1) {
        x1 = std::max(x1, x0 + 1);
        y1 = std::max(y1, y0 + 1);
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) plot(x, y);
        }
    }

    /// Dashed border of [x0, x1) x [y0, y1), phase continuous clockwise from the top-left corner.
    void dashed_outline(int x0, int y0, int x1, int y1) {
        x1 = std::max(x1, x0 + 1);
        y1 = std::max(y1, y0 + 1);
        int step = 0;
        auto pen = [&](int x, int y) {
            if (step % dash_period_ < dash_on_) plot(x, y);
            ++step;
        };
        for (int x = x0; x < x1 - 1; ++x) pen(x, y0);
        for (int y = y0; y < y1 - 1; ++y) pen(x1 - 1, y);
        for (int x = x1 - 1; x > x0; --x) pen(x, y1 - 1);
        for (int y = y1 - 1; y > y0; --y) pen(x0, y);
        plot(x0, y0);
        plot(x1 - 1, y0);
        plot(x0, y1 - 1);
        plot(x1 - 1, y1 - 1);
    }

    /// Integer line stepping between inclusive endpoints. Dashed lines always
    /// ink both endpoints.
    void line(int x0, int y0, int x1, int y1, bool dashed) {
        plot(x1, y1);
        const int dx = std::abs(x1 - x0);
        const int dy = -std::abs(y1 - y0);
        const int sx = x0 < x1 ? 1 : -1;
        const int sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        int step = 0;
        for (;;) {
            if (!dashed || step % dash_period_ < dash_on_) plot(x0, y0);
            ++step;
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    GrayImage take() && { return std::move(img_); }

private:
    int ox_;
    int oy_;
    GrayImage img_;
    std::uint8_t ink_;
    int dash_on_;
    int dash_period_;
};

}  // namespace

GrayImage render_raster(const scene::Scene& s, const RenderConfig& cfg) {
    const Layout layout = layout_scene(s, cfg);
    Canvas canvas(layout.canvas, cfg);
    const auto snap = &Canvas::snap;
    for (const auto& shape : layout.shapes) {
        if (const auto* r = std::get_if<RectShape>(&shape)) {
            // Every pixel the box touches.
            const int x0 = Canvas::lo(r->x), y0 = Canvas::lo(r->y), x1 = Canvas::hi(r->x + r->w), y1 = Canvas::hi(r->y + r->h);
            if (r->filled) {
                canvas.fill(x0, y0, x1, y1);
            } else {
                canvas.dashed_outline(x0, y0, x1, y1);
            }
        } else if (const auto* l = std::get_if<LineShape>(&shape)) {
            canvas.line(snap(l->a.x), snap(l->a.y), snap(l->b.x), snap(l->b.y), l->dashed);
        } else if (const auto* p = std::get_if<PolylineShape>(&shape)) {
            for (std::size_t i = 1; i < p->points.size(); ++i) {
                canvas.line(snap(p->points[i - 1].x), snap(p->points[i - 1].y), snap(p->points[i].x),
                            snap(p->points[i].y), false);
            }
        } else if (const auto* t = std::get_if<TextShape>(&shape)) {
            canvas.fill(Canvas::lo(t->left()), Canvas::lo(t->top), Canvas::hi(t->left() + t->width),
                        Canvas::hi(t->top + t->height));
        }
    }
    return std::move(canvas).take();
}

}  // namespace bardsl::render

#include "bardsl/scene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bardsl/dsl/number.hpp"
#include "bardsl/dsl/printer.hpp"

namespace bardsl::scene {

const char* to_string(SceneErrorKind kind) {
    switch (kind) {
        case SceneErrorKind::DuplicateRow: return "DuplicateRow";
        case SceneErrorKind::UnexpandedMacro: return "UnexpandedMacro";
    }
    return "?";
}

const BarRow* Scene::bar(int row) const {
    const auto it = rows.find(row);
    return it == rows.end() ? nullptr : &it->second;
}

BarRow make_bar_row(const dsl::HorizontalLine& hl, std::size_t statement) {
    BarRow bar;
    bar.name = hl.name;
    bar.row = hl.row;
    bar.statement = statement;
    bar.boundaries.reserve(hl.segments.size() + 1);
    bar.boundaries.push_back(0);
    double x = 0;
    for (double v : hl.segments) {
        const double len = std::fabs(v);
        const double end = x + len;
        bar.segments.push_back({len, v > 0 ? Stroke::Solid : Stroke::Dashed, x, end});
        bar.boundaries.push_back(end);
        x = end;
    }
    bar.total = x;
    return bar;
}

Result<Scene, SceneError> build_scene(const dsl::Program& p) {
    Scene scene;
    double max_x = 0;
    int max_row = 0;
    for (std::size_t i = 0; i < p.statements.size(); ++i) {
        const auto& stmt = p.statements[i];
        if (const auto* hl = std::get_if<dsl::HorizontalLine>(&stmt)) {
            if (scene.rows.contains(hl->row)) {
                return fail(SceneError{SceneErrorKind::DuplicateRow, i, hl->row,
                                       "row " + std::to_string(hl->row) + " already holds a bar (statement " +
                                           std::to_string(scene.rows.at(hl->row).statement + 1) + ")"});
            }
            BarRow bar = make_bar_row(*hl, i);
            max_x = std::max(max_x, bar.total);
            max_row = std::max(max_row, bar.row);
            scene.rows.emplace(hl->row, std::move(bar));
        } else if (const auto* vl = std::get_if<dsl::VerticalLink>(&stmt)) {
            scene.links.push_back({vl->x, vl->row0, vl->row1, i});
            max_x = std::max(max_x, vl->x);
            max_row = std::max({max_row, vl->row0, vl->row1});
        } else if (const auto* hb = std::get_if<dsl::HorizontalBrace>(&stmt)) {
            scene.hbraces.push_back({hb->label, hb->side, hb->row, hb->x0, hb->x1, i});
            max_x = std::max({max_x, hb->x0, hb->x1});
            max_row = std::max(max_row, hb->row);
        } else if (const auto* vb = std::get_if<dsl::VerticalBrace>(&stmt)) {
            scene.vbraces.push_back({vb->label, vb->col, vb->row0, vb->row1, i});
            max_x = std::max(max_x, vb->col);
            max_row = std::max({max_row, vb->row0, vb->row1});
        } else {
            return fail(SceneError{SceneErrorKind::UnexpandedMacro, i, 0, "CMP must be expanded before building a scene"});
        }
    }
    scene.extent = {max_x, max_row};
    return scene;
}

double distance_to_boundary(std::span<const double> boundaries, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (double b : boundaries) best = std::min(best, std::fabs(b - x));
    return best;
}

bool on_boundary(std::span<const double> boundaries, double x, double eps) {
    return distance_to_boundary(boundaries, x) <= eps;
}

std::string dump(const Scene& s) {
    using dsl::format_decimal;
    std::ostringstream os;
    os << "extent max_x=" << format_decimal(s.extent.max_x) << " max_row=" << s.extent.max_row << "\n";
    for (const auto& [row, bar] : s.rows) {
        os << "row " << row << " " << dsl::quote(bar.name) << " total=" << format_decimal(bar.total) << " boundaries=";
        for (std::size_t k = 0; k < bar.boundaries.size(); ++k) {
            os << (k ? "," : "") << format_decimal(bar.boundaries[k]);
        }
        os << "\n";
        for (const auto& seg : bar.segments) {
            os << "  seg " << format_decimal(seg.start_x) << ".." << format_decimal(seg.end_x) << " "
               << (seg.style == Stroke::Solid ? "solid" : "dashed") << "\n";
        }
    }
    for (const auto& l : s.links) {
        os << "link x=" << format_decimal(l.x) << " rows=" << l.row0 << ".." << l.row1 << "\n";
    }
    for (const auto& b : s.hbraces) {
        os << "hbrace " << dsl::quote(b.label) << " " << (b.side == dsl::Side::North ? "N" : "S") << " row=" << b.row
           << " x=" << format_decimal(b.x0) << ".." << format_decimal(b.x1) << "\n";
    }
    for (const auto& b : s.vbraces) {
        os << "vbrace " << dsl::quote(b.label) << " col=" << format_decimal(b.col) << " rows=" << b.row0 << ".."
           << b.row1 << "\n";
    }
    return os.str();
}

}  // namespace bardsl::scene

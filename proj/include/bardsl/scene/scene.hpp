#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"

namespace bardsl::scene {

enum class Stroke { Solid, Dashed };

struct BarSegment {
    double length = 0;  ///< always positive
    Stroke style = Stroke::Solid;
    double start_x = 0;
    double end_x = 0;

    bool operator==(const BarSegment&) const = default;
};

/// One HL resolved onto its row. Bars start at x = 0; `boundaries` holds the
/// prefix sums of |segment| including 0, so it has segments.size() + 1 entries.
struct BarRow {
    std::string name;
    int row = 0;
    std::vector<BarSegment> segments;
    std::vector<double> boundaries;
    double total = 0;
    std::size_t statement = 0;

    bool operator==(const BarRow&) const = default;
};

struct ResolvedLink {
    double x = 0;
    int row0 = 0;
    int row1 = 0;
    std::size_t statement = 0;

    bool operator==(const ResolvedLink&) const = default;
};

struct ResolvedHBrace {
    std::string label;
    dsl::Side side = dsl::Side::North;
    int row = 0;
    double x0 = 0;
    double x1 = 0;
    std::size_t statement = 0;

    bool operator==(const ResolvedHBrace&) const = default;
};

struct ResolvedVBrace {
    std::string label;
    double col = 0;
    int row0 = 0;
    int row1 = 0;
    std::size_t statement = 0;

    bool operator==(const ResolvedVBrace&) const = default;
};

struct Extent {
    double max_x = 0;
    int max_row = 0;

    bool operator==(const Extent&) const = default;
};

/// Grid-anchored geometry. Rows referenced by links or braces may be absent
/// from `rows`; those dangling references are judged by the verifier.
struct Scene {
    std::map<int, BarRow> rows;
    std::vector<ResolvedLink> links;
    std::vector<ResolvedHBrace> hbraces;
    std::vector<ResolvedVBrace> vbraces;
    Extent extent;

    [[nodiscard]] const BarRow* bar(int row) const;

    bool operator==(const Scene&) const = default;
};

enum class SceneErrorKind { DuplicateRow, UnexpandedMacro };

const char* to_string(SceneErrorKind kind);

struct SceneError {
    SceneErrorKind kind = SceneErrorKind::DuplicateRow;
    std::size_t statement = 0;
    int row = 0;
    std::string message;
};

Result<Scene, SceneError> build_scene(const dsl::Program& p);

BarRow make_bar_row(const dsl::HorizontalLine& hl, std::size_t statement = 0);

inline const std::vector<double>& boundary_set(const BarRow& row) { return row.boundaries; }

/// True when some boundary lies within `eps` of x.
bool on_boundary(std::span<const double> boundaries, double x, double eps = dsl::kGridEpsilon);

/// Distance from x to the nearest boundary.
double distance_to_boundary(std::span<const double> boundaries, double x);

/// Plain-text dump used by test fixtures.
std::string dump(const Scene& s);

}  // namespace bardsl::scene

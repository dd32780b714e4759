#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bardsl::dsl {

/// Tolerance, in grid units, for every coordinate comparison downstream of
/// the parser.
inline constexpr double kGridEpsilon = 1e-6;

/// `HL "name" row l1 l2 ...` -- one entity bar. Positive lengths are solid
/// (existing quantity), negative lengths dashed (removed or hypothetical).
struct HorizontalLine {
    std::string name;
    int row = 0;
    std::vector<double> segments;

    bool operator==(const HorizontalLine&) const = default;
};

/// `VL x row0 row1` -- cross-row alignment at a shared boundary.
struct VerticalLink {
    double x = 0;
    int row0 = 0;
    int row1 = 0;

    bool operator==(const VerticalLink&) const = default;
};

enum class Side { North, South };

/// `HB "label" N|S row x0 x1` -- part-whole bracket over one bar.
struct HorizontalBrace {
    std::string label;
    Side side = Side::North;
    int row = 0;
    double x0 = 0;
    double x1 = 0;

    bool operator==(const HorizontalBrace&) const = default;
};

/// `VB "label" col row0 row1` -- aggregation across several bars.
struct VerticalBrace {
    std::string label;
    double col = 0;
    int row0 = 0;
    int row1 = 0;

    bool operator==(const VerticalBrace&) const = default;
};

/// `CMP "label" a b` -- comparison macro, removed by expand_macros().
struct Compare {
    std::string label;
    int row_a = 0;
    int row_b = 0;

    bool operator==(const Compare&) const = default;
};

using Statement = std::variant<HorizontalLine, VerticalLink, HorizontalBrace, VerticalBrace, Compare>;

struct Program {
    std::vector<Statement> statements;
    std::optional<std::string> source_name;

    /// Structural equality ignores where the program came from.
    bool operator==(const Program& other) const { return statements == other.statements; }

    [[nodiscard]] bool has_macros() const;
    /// Every quoted string in statement order (HL names, HB/VB labels, CMP labels).
    [[nodiscard]] std::vector<std::string> labels() const;
};

/// Keyword of a statement as written in source.
const char* keyword(const Statement& s);

}  // namespace bardsl::dsl

#include "bardsl/dsl/macros.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bardsl::dsl {

const char* to_string(ExpansionErrorKind kind) {
    switch (kind) {
        case ExpansionErrorKind::MissingBar: return "MissingBar";
        case ExpansionErrorKind::MultipleBars: return "MultipleBars";
        case ExpansionErrorKind::Degenerate: return "Degenerate";
    }
    return "?";
}

namespace {

double bar_total(const HorizontalLine& hl) {
    double total = 0;
    for (double s : hl.segments) total += std::fabs(s);
    return total;
}

}  // namespace

Result<Program, ExpansionError> expand_macros(const Program& p) {
    if (!p.has_macros()) return p;

    std::map<int, std::vector<const HorizontalLine*>> bars;
    for (const auto& s : p.statements) {
        if (const auto* hl = std::get_if<HorizontalLine>(&s)) bars[hl->row].push_back(hl);
    }

    auto total_of = [&](int row, std::size_t idx) -> Result<double, ExpansionError> {
        const auto it = bars.find(row);
        if (it == bars.end()) {
            return fail(ExpansionError{ExpansionErrorKind::MissingBar, idx, row,
                                       "CMP references row " + std::to_string(row) + " which has no bar"});
        }
        if (it->second.size() > 1) {
            return fail(ExpansionError{ExpansionErrorKind::MultipleBars, idx, row,
                                       "CMP references row " + std::to_string(row) + " which has several bars"});
        }
        return bar_total(*it->second.front());
    };

    Program out;
    out.source_name = p.source_name;
    out.statements.reserve(p.statements.size() + 4);
    for (std::size_t i = 0; i < p.statements.size(); ++i) {
        const auto* cmp = std::get_if<Compare>(&p.statements[i]);
        if (cmp == nullptr) {
            out.statements.push_back(p.statements[i]);
            continue;
        }
        auto la = total_of(cmp->row_a, i);
        if (!la) return fail(std::move(la).error());
        auto lb = total_of(cmp->row_b, i);
        if (!lb) return fail(std::move(lb).error());
        if (std::fabs(*la - *lb) <= kGridEpsilon) {
            return fail(ExpansionError{ExpansionErrorKind::Degenerate, i, cmp->row_a,
                                       "CMP rows have equal totals; nothing to compare"});
        }
        const double lo = std::min(*la, *lb);
        const double hi = std::max(*la, *lb);
        const int longer = *la > *lb ? cmp->row_a : cmp->row_b;
        out.statements.emplace_back(VerticalLink{lo, std::min(cmp->row_a, cmp->row_b), std::max(cmp->row_a, cmp->row_b)});
        out.statements.emplace_back(HorizontalBrace{cmp->label, Side::South, longer, lo, hi});
    }
    return out;
}

}  // namespace bardsl::dsl

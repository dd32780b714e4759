#include "bardsl/verify/checks.hpp"

#include <algorithm>
#include <cmath>

#include "bardsl/dsl/number.hpp"
#include "bardsl/text/unicode.hpp"

namespace bardsl::verify {

using dsl::format_decimal;
using dsl::kGridEpsilon;
using scene::BarRow;
using scene::on_boundary;
using scene::Scene;
using scene::Stroke;

std::vector<VisibleLabel> visible_labels(const dsl::Program& p) {
    std::vector<VisibleLabel> out;
    for (std::size_t i = 0; i < p.statements.size(); ++i) {
        const auto& s = p.statements[i];
        if (const auto* hl = std::get_if<dsl::HorizontalLine>(&s)) out.push_back({i, hl->name});
        if (const auto* hb = std::get_if<dsl::HorizontalBrace>(&s)) out.push_back({i, hb->label});
        if (const auto* vb = std::get_if<dsl::VerticalBrace>(&s)) out.push_back({i, vb->label});
        if (const auto* cmp = std::get_if<dsl::Compare>(&s)) out.push_back({i, cmp->label});
    }
    return out;
}

std::vector<double> numeric_tokens(std::string_view label) {
    std::vector<double> out;
    auto digit = [&](std::size_t k) { return k < label.size() && label[k] >= '0' && label[k] <= '9'; };
    std::size_t i = 0;
    while (i < label.size()) {
        if (!digit(i)) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (digit(i)) ++i;
        if (i < label.size() && label[i] == '.' && digit(i + 1)) {
            ++i;
            while (digit(i)) ++i;
        }
        if (auto v = dsl::parse_decimal(label.substr(start, i - start))) out.push_back(*v);
    }
    return out;
}

namespace {

std::string rows_text(int r0, int r1) { return std::to_string(r0) + ".." + std::to_string(r1); }

std::vector<const BarRow*> spanned_bars(const Scene& s, int row0, int row1) {
    std::vector<const BarRow*> out;
    for (auto it = s.rows.lower_bound(row0); it != s.rows.end() && it->first <= row1; ++it) out.push_back(&it->second);
    return out;
}

/// Label with all whitespace removed, if it is nothing but a number.
std::optional<double> pure_number(std::string_view label) {
    std::string compact;
    for (char32_t c : text::decode_utf8(label)) {
        if (!text::is_whitespace(c)) compact += text::encode_utf8(std::u32string(1, c));
    }
    return dsl::parse_decimal(compact);
}

}  // namespace

std::vector<Diagnostic> check_alignment(const Scene& s) {
    std::vector<Diagnostic> out;
    for (const auto& hb : s.hbraces) {
        const BarRow* bar = s.bar(hb.row);
        if (bar == nullptr) {
            out.push_back(make_diagnostic(CheckId::C1, hb.statement, hb.row,
                                          "HB references row " + std::to_string(hb.row) + " which has no bar"));
            continue;
        }
        std::vector<std::string> off;
        if (!on_boundary(bar->boundaries, hb.x0)) off.push_back(format_decimal(hb.x0));
        if (!on_boundary(bar->boundaries, hb.x1)) off.push_back(format_decimal(hb.x1));
        if (!off.empty()) {
            std::string msg = "HB endpoint";
            msg += off.size() > 1 ? "s " + off[0] + "," + off[1] : " " + off[0];
            msg += " not on a segment boundary of row " + std::to_string(hb.row);
            out.push_back(make_diagnostic(CheckId::C1, hb.statement, hb.row, std::move(msg)));
        }
    }
    for (const auto& vl : s.links) {
        if (s.bar(vl.row0) == nullptr || s.bar(vl.row1) == nullptr) {
            const int missing = s.bar(vl.row0) == nullptr ? vl.row0 : vl.row1;
            out.push_back(make_diagnostic(CheckId::C1, vl.statement, missing,
                                          "VL endpoint row " + std::to_string(missing) + " has no bar"));
            continue;
        }
        std::vector<int> bad_rows;
        for (const BarRow* bar : spanned_bars(s, vl.row0, vl.row1)) {
            if (!on_boundary(bar->boundaries, vl.x)) bad_rows.push_back(bar->row);
        }
        if (!bad_rows.empty()) {
            std::string rows;
            for (int r : bad_rows) rows += (rows.empty() ? "" : ",") + std::to_string(r);
            out.push_back(make_diagnostic(CheckId::C1, vl.statement, bad_rows.front(),
                                          "VL at x=" + format_decimal(vl.x) + " is not a boundary of row(s) " + rows));
        }
    }
    return out;
}

std::vector<Diagnostic> check_completeness(const dsl::Program& p, const ProblemMeta& meta, std::size_t* found) {
    std::vector<Diagnostic> out;
    std::vector<std::string> labels;
    for (const auto& l : visible_labels(p)) labels.push_back(text::normalize_label(l.text));

    std::size_t hits = 0;
    for (const auto& given : meta.givens) {
        const std::string needle = text::normalize_label(given);
        const bool present = std::any_of(labels.begin(), labels.end(),
                                         [&](const std::string& l) { return l.find(needle) != std::string::npos; });
        if (present) {
            ++hits;
        } else {
            out.push_back(make_diagnostic(CheckId::C2, std::nullopt, std::nullopt,
                                          "given \"" + given + "\" does not appear in any label"));
        }
    }
    if (found != nullptr) *found = hits;

    const std::string marker = text::normalize_label(meta.query_marker);
    const bool queried = std::any_of(labels.begin(), labels.end(), [&](const std::string& l) {
        return l.find('?') != std::string::npos && (marker.empty() || l.find(marker) != std::string::npos);
    });
    if (!queried) {
        std::string msg = "no label marks the queried quantity with \"?\"";
        if (!marker.empty()) msg += " together with \"" + meta.query_marker + "\"";
        out.push_back(make_diagnostic(CheckId::C2, std::nullopt, std::nullopt, std::move(msg)));
    }
    return out;
}

std::vector<Diagnostic> check_leakage(const dsl::Program& p, const ProblemMeta& meta) {
    std::vector<Diagnostic> out;
    if (!meta.answer) return out;
    const double answer = *meta.answer;
    for (const auto& label : visible_labels(p)) {
        for (double tok : numeric_tokens(label.text)) {
            if (std::fabs(tok - answer) <= kGridEpsilon * std::max(1.0, std::fabs(answer))) {
                out.push_back(make_diagnostic(CheckId::C5, label.statement, std::nullopt,
                                              "label \"" + label.text + "\" reveals the answer " + format_decimal(answer)));
                break;
            }
        }
    }
    return out;
}

std::vector<Diagnostic> check_vb_vl_usage(const Scene& s) {
    std::vector<Diagnostic> out;
    for (const auto& vb : s.vbraces) {
        const auto bars = spanned_bars(s, vb.row0, vb.row1);
        if (bars.size() < 2) {
            out.push_back(make_diagnostic(CheckId::C6, vb.statement, vb.row0,
                                          "VB over rows " + rows_text(vb.row0, vb.row1) + " aggregates " +
                                              std::to_string(bars.size()) + " bar(s); needs at least 2"));
        }
    }
    for (const auto& vl : s.links) {
        const auto bars = spanned_bars(s, vl.row0, vl.row1);
        const auto sharing = std::count_if(bars.begin(), bars.end(),
                                           [&](const BarRow* b) { return on_boundary(b->boundaries, vl.x); });
        if (sharing < 2) {
            out.push_back(make_diagnostic(CheckId::C6, vl.statement, vl.row0,
                                          "VL at x=" + format_decimal(vl.x) + " is a boundary of " +
                                              std::to_string(sharing) + " spanned bar(s); needs a shared boundary"));
        }
    }
    return out;
}

std::vector<Diagnostic> check_transfer(const Scene& s, const ProblemMeta& meta) {
    if (meta.schema != Schema::ChangeRevert) return {};

    auto link_joins = [&](const BarRow& a, const BarRow& b) {
        const int lo = std::min(a.row, b.row);
        const int hi = std::max(a.row, b.row);
        return std::any_of(s.links.begin(), s.links.end(), [&](const scene::ResolvedLink& l) {
            return l.row0 <= lo && l.row1 >= hi && l.x > kGridEpsilon && on_boundary(a.boundaries, l.x) &&
                   on_boundary(b.boundaries, l.x);
        });
    };

    for (const auto& [ri, giver] : s.rows) {
        for (const auto& seg : giver.segments) {
            if (seg.style != Stroke::Dashed) continue;
            const double t = seg.length;
            for (const auto& [rj, taker] : s.rows) {
                if (rj == ri || taker.segments.empty()) continue;
                const auto& last = taker.segments.back();
                if (last.style == Stroke::Solid && std::fabs(last.length - t) <= kGridEpsilon && link_joins(giver, taker)) {
                    return {};
                }
            }
        }
    }
    return {make_diagnostic(CheckId::C4, std::nullopt, std::nullopt,
                            "no paired -t/+t transfer with a VL at a shared post-transfer boundary")};
}

std::vector<Diagnostic> check_numeric_consistency(const Scene& s) {
    std::vector<Diagnostic> out;
    auto agrees = [](double q, double measured) {
        return std::fabs(q - measured) <= kGridEpsilon * std::max(1.0, std::fabs(q));
    };
    for (const auto& hb : s.hbraces) {
        const auto q = pure_number(hb.label);
        if (!q) continue;
        const double span = hb.x1 - hb.x0;
        if (!agrees(*q, span)) {
            out.push_back(make_diagnostic(CheckId::C3, hb.statement, hb.row,
                                          "HB label " + format_decimal(*q) + " disagrees with its span " +
                                              format_decimal(span)));
        }
    }
    for (const auto& vb : s.vbraces) {
        const auto q = pure_number(vb.label);
        if (!q) continue;
        double sum = 0;
        for (const BarRow* b : spanned_bars(s, vb.row0, vb.row1)) sum += b->total;
        if (!agrees(*q, sum)) {
            out.push_back(make_diagnostic(CheckId::C3, vb.statement, vb.row0,
                                          "VB label " + format_decimal(*q) + " disagrees with the spanned total " +
                                              format_decimal(sum)));
        }
    }
    return out;
}

std::vector<Diagnostic> check_noncritical(const Scene& s) {
    std::vector<Diagnostic> out;

    for (const auto& [row, bar] : s.rows) {
        bool seen_dashed = false;
        for (const auto& seg : bar.segments) {
            if (seg.style == Stroke::Dashed) {
                seen_dashed = true;
            } else if (seen_dashed) {
                out.push_back(make_diagnostic(CheckId::N1, bar.statement, row,
                                              "solid segment follows a dashed one on row " + std::to_string(row)));
                break;
            }
        }
    }

    for (const auto& [rrow, repeated] : s.rows) {
        if (repeated.segments.size() < 2) continue;
        for (const auto& [brow, base] : s.rows) {
            if (brow == rrow || brow < rrow) continue;
            const bool copies = std::all_of(repeated.segments.begin(), repeated.segments.end(), [&](const auto& seg) {
                return std::fabs(seg.length - base.total) <= kGridEpsilon;
            });
            if (copies) {
                out.push_back(make_diagnostic(CheckId::N2, base.statement, brow,
                                              "base quantity on row " + std::to_string(brow) + " sits below its " +
                                                  std::to_string(repeated.segments.size()) + "x copy on row " +
                                                  std::to_string(rrow)));
            }
        }
    }

    for (const auto& [row, bar] : s.rows) {
        if (bar.segments.size() != 1) continue;
        const auto n = std::count_if(s.hbraces.begin(), s.hbraces.end(),
                                     [&](const scene::ResolvedHBrace& hb) { return hb.row == row; });
        if (n >= 2) {
            out.push_back(make_diagnostic(CheckId::N3, bar.statement, row,
                                          "undivided bar on row " + std::to_string(row) + " carries " +
                                              std::to_string(n) + " braces"));
        }
    }

    auto check_label = [&](std::size_t stmt, const std::string& label) {
        const std::size_t len = text::scalar_count(label);
        if (len > kMaxLabelLength) {
            out.push_back(make_diagnostic(CheckId::N4, stmt, std::nullopt,
                                          "label is " + std::to_string(len) + " characters long"));
        } else if (label.find('=') != std::string::npos) {
            out.push_back(make_diagnostic(CheckId::N4, stmt, std::nullopt, "label embeds a calculation"));
        }
    };
    for (const auto& [row, bar] : s.rows) check_label(bar.statement, bar.name);
    for (const auto& hb : s.hbraces) check_label(hb.statement, hb.label);
    for (const auto& vb : s.vbraces) check_label(vb.statement, vb.label);

    return out;
}

}  // namespace bardsl::verify

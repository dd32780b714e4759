#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bardsl/dsl/macros.hpp"
#include "bardsl/dsl/parser.hpp"
#include "bardsl/dsl/program.hpp"

#ifndef BARDSL_FIXTURE_DIR
#error "BARDSL_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace support {

inline std::filesystem::path fixture_dir() { return BARDSL_FIXTURE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::filesystem::path> fixture_programs() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(fixture_dir() / "programs")) {
        if (e.path().extension() == ".bardsl") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Parses and expands; throws on failure since fixtures are known-good.
inline bardsl::dsl::Program load(const std::filesystem::path& p) {
    auto parsed = bardsl::dsl::parse(read_file(p), p.filename().string());
    if (!parsed) throw std::runtime_error(parsed.error().format(p.string()));
    auto expanded = bardsl::dsl::expand_macros(*parsed);
    if (!expanded) throw std::runtime_error(expanded.error().message);
    return std::move(expanded).value();
}

inline bardsl::dsl::Program parse_ok(const std::string& text) {
    auto parsed = bardsl::dsl::parse(text);
    if (!parsed) throw std::runtime_error(parsed.error().format());
    return std::move(parsed).value();
}

/// Random generator of structurally valid programs.
class ProgramGen {
public:
    explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double unit() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
    std::mt19937_64& rng() { return rng_; }

    /// Short decimal with up to three fractional digits, nonzero.
    double length() {
        const int scale = std::array<int, 3>{1, 10, 1000}[static_cast<std::size_t>(uniform(0, 2))];
        const int v = uniform(1, 20 * scale);
        return static_cast<double>(v) / scale;
    }

    std::string label() {
        static const std::vector<std::string> pieces = {"A", "total", "?", " ", "\"", "\\", "苹果", "12", "kg",
                                                        "x y", "é", "#", "=", "3.5", "left ?"};
        std::string s;
        const int n = uniform(0, 4);
        for (int i = 0; i < n; ++i) s += pieces[static_cast<std::size_t>(uniform(0, int(pieces.size()) - 1))];
        return s;
    }

    bardsl::dsl::Program program(bool allow_cmp = true) {
        using namespace bardsl::dsl;
        Program p;
        const int rows = uniform(1, 4);
        std::vector<int> row_ids;
        for (int r = 0, next = 0; r < rows; ++r, next += uniform(1, 3)) row_ids.push_back(next);
        for (int r : row_ids) {
            HorizontalLine hl{label(), r, {}};
            const int segs = uniform(1, 5);
            for (int i = 0; i < segs; ++i) hl.segments.push_back(unit() < 0.3 ? -length() : length());
            p.statements.emplace_back(std::move(hl));
        }
        const int extras = uniform(0, 5);
        for (int i = 0; i < extras; ++i) {
            const int kind = uniform(0, allow_cmp ? 3 : 2);
            const int a = row_ids[static_cast<std::size_t>(uniform(0, rows - 1))];
            const int b = a + uniform(1, 3);
            switch (kind) {
                case 0: p.statements.emplace_back(VerticalLink{length(), a, b}); break;
                case 1: {
                    const double x0 = length();
                    p.statements.emplace_back(HorizontalBrace{label(), unit() < 0.5 ? Side::North : Side::South, a,
                                                              x0, x0 + length()});
                    break;
                }
                case 2: p.statements.emplace_back(VerticalBrace{label(), length(), a, b}); break;
                default: p.statements.emplace_back(Compare{label(), a, b}); break;
            }
        }
        return p;
    }

private:
    std::mt19937_64 rng_;
};

/// Bars plus braces snapped to bar boundaries; lengths are tenths so every
/// boundary gap is at least 0.1.
struct SnappedScene {
    bardsl::dsl::Program program;
    std::vector<std::size_t> braces;  ///< statement indices of the HBs
};

inline SnappedScene snapped_scene(ProgramGen& gen) {
    using namespace bardsl::dsl;
    SnappedScene out;
    const int rows = gen.uniform(1, 5);
    std::vector<std::vector<double>> bounds;
    for (int r = 0; r < rows; ++r) {
        HorizontalLine hl{"bar " + std::to_string(r), r, {}};
        std::vector<double> b{0};
        const int segs = gen.uniform(1, 5);
        int acc = 0;
        for (int i = 0; i < segs; ++i) {
            const int tenths = gen.uniform(1, 50);
            acc += tenths;
            hl.segments.push_back(gen.unit() < 0.3 ? -tenths / 10.0 : tenths / 10.0);
            b.push_back(acc / 10.0);
        }
        bounds.push_back(b);
        out.program.statements.emplace_back(std::move(hl));
    }
    const int braces = gen.uniform(1, 6);
    for (int i = 0; i < braces; ++i) {
        const int r = gen.uniform(0, rows - 1);
        const auto& b = bounds[static_cast<std::size_t>(r)];
        const int i0 = gen.uniform(0, int(b.size()) - 2);
        const int i1 = gen.uniform(i0 + 1, int(b.size()) - 1);
        out.braces.push_back(out.program.statements.size());
        out.program.statements.emplace_back(HorizontalBrace{"part " + std::to_string(i), gen.unit() < 0.5 ? Side::North : Side::South,
                                                            r, b[static_cast<std::size_t>(i0)], b[static_cast<std::size_t>(i1)]});
    }
    if (rows >= 2) out.program.statements.emplace_back(VerticalLink{0, 0, rows - 1});
    return out;
}

/// Moves one endpoint of the chosen brace at least 0.05 away from every
/// boundary of its row, keeping x0 < x1.
inline bardsl::dsl::Program perturb_brace(const SnappedScene& sc, std::size_t which, bool move_x1) {
    using namespace bardsl::dsl;
    Program p = sc.program;
    auto& hb = std::get<HorizontalBrace>(p.statements[sc.braces[which]]);
    const auto& hl = std::get<HorizontalLine>(p.statements[static_cast<std::size_t>(hb.row)]);
    std::vector<double> b{0};
    for (double v : hl.segments) b.push_back(b.back() + std::fabs(v));
    if (move_x1) {
        const auto it = std::upper_bound(b.begin(), b.end(), hb.x1 + 1e-9);
        hb.x1 = it == b.end() ? hb.x1 + 0.5 : (hb.x1 + *it) / 2;
    } else {
        const auto it = std::upper_bound(b.begin(), b.end(), hb.x0 + 1e-9);
        hb.x0 = (hb.x0 + *it) / 2;
    }
    return p;
}

}  // namespace support

#include <doctest.h>

#include <algorithm>
#include <random>

#include "bardsl/render/config.hpp"
#include "bardsl/render/layout.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/scene/scene.hpp"
#include "support.hpp"

using namespace bardsl;
using namespace bardsl::render;

namespace {

scene::Scene scene_of(const dsl::Program& p) {
    auto s = scene::build_scene(p);
    REQUIRE(s.ok());
    return std::move(s).value();
}

scene::Scene scene_of(const std::string& text) { return scene_of(support::parse_ok(text)); }

std::size_t ink_count(const GrayImage& img) {
    return static_cast<std::size_t>(std::count(img.pixels.begin(), img.pixels.end(), std::uint8_t{0}));
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("coordinate map of a single bar") {
    const std::string svg = render_svg(scene_of("HL \"A\" 0 3"));
    CHECK(svg.find("height=\"18\" stroke=\"#000000\" width=\"120\" x=\"20\" y=\"20\"/>") != std::string::npos);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.size() >= 7);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
}

TEST_CASE("dashed segments and text escaping") {
    const std::string svg = render_svg(scene_of("HL \"a<b & \\\"c\\\"\" 0 2 -1"));
    CHECK(svg.find("fill=\"none\" height=\"18\" stroke=\"#000000\" stroke-dasharray=\"6,4\" width=\"40\" x=\"100\"") !=
          std::string::npos);
    CHECK(svg.find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
    CHECK(svg.find("a<b") == std::string::npos);
}

TEST_CASE("render is deterministic on fixtures") {
    for (const auto& path : support::fixture_programs()) {
        CAPTURE(path.filename().string());
        auto parsed = dsl::parse(support::read_file(path));
        REQUIRE(parsed.ok());
        auto expanded = dsl::expand_macros(*parsed);
        REQUIRE(expanded.ok());
        auto s = scene::build_scene(*expanded);
        REQUIRE(s.ok());
        CHECK(render_all(*s) == render_all(*s));
    }
}

TEST_CASE("golden files") {
    const auto dir = support::fixture_dir() / "golden";
    const auto s = scene_of(support::load(dir / "basic.bardsl"));
    CHECK(support::load(dir / "basic.bardsl").statements.size() == 5);
    CHECK(render_svg(s) == support::read_file(dir / "basic.svg"));
    CHECK(export_geogebra(s) == support::read_file(dir / "basic.ggb.txt"));
}

TEST_CASE("raster of a single unit bar") {
    const auto s = scene_of("HL \"A\" 0 1");
    const GrayImage img = render_raster(s);
    const Layout layout = layout_scene(s, {});
    const int ox = static_cast<int>(layout.canvas.x0);
    const int oy = static_cast<int>(layout.canvas.y0);
    CHECK(img.width == static_cast<int>(layout.canvas.x1 - layout.canvas.x0));
    CHECK(img.height == static_cast<int>(layout.canvas.y1 - layout.canvas.y0));

    auto expected_ink = [](int x, int y) {
        const bool bar = x >= 20 && x < 60 && y >= 20 && y < 38;
        const bool tick = (x == 20 || x == 60) && y >= 18 && y <= 40;
        const bool text = x >= 9 && x < 16 && y >= 23 && y < 35;
        return bar || tick || text;
    };
    std::size_t mismatches = 0;
    std::size_t expected = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const bool want = expected_ink(x + ox, y + oy);
            expected += want ? 1 : 0;
            if ((img.at(x, y) == 0) != want) ++mismatches;
            if (!want) CHECK(img.at(x, y) == 255);
        }
    }
    CHECK(mismatches == 0);
    CHECK(ink_count(img) == expected);
}

TEST_CASE("ink grows with a second bar") {
    const auto one = render_raster(scene_of("HL \"A\" 0 3 -2"));
    const auto two = render_raster(scene_of("HL \"A\" 0 3 -2\nHL \"B\" 1 2"));
    CHECK(ink_count(two) > ink_count(one));
    support::ProgramGen gen(4);
    for (int i = 0; i < 100; ++i) {
        auto p = gen.program(false);
        const auto before = ink_count(render_raster(scene_of(p)));
        int next_row = 0;
        for (const auto& st : p.statements) {
            if (const auto* hl = std::get_if<dsl::HorizontalLine>(&st)) next_row = std::max(next_row, hl->row + 1);
        }
        p.statements.emplace_back(dsl::HorizontalLine{"extra", next_row + 20, {2.0, -1.0}});
        CHECK(ink_count(render_raster(scene_of(p))) > before);
    }
}

TEST_CASE("raster bounding box agrees with vector bounds") {
    auto check_scene = [](const scene::Scene& s) {
        const auto img = render_raster(s);
        const auto layout = layout_scene(s, {});
        int x0 = img.width, y0 = img.height, x1 = -1, y1 = -1;
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                if (img.at(x, y) != 0) continue;
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
        }
        REQUIRE(x1 >= 0);
        const double ox = layout.canvas.x0;
        const double oy = layout.canvas.y0;
        CHECK(std::fabs(x0 + ox - layout.content.x0) <= 1.0);
        CHECK(std::fabs(y0 + oy - layout.content.y0) <= 1.0);
        CHECK(std::fabs(x1 + ox - layout.content.x1) <= 1.0);
        CHECK(std::fabs(y1 + oy - layout.content.y1) <= 1.0);
    };
    for (const auto& path : support::fixture_programs()) {
        CAPTURE(path.filename().string());
        check_scene(scene_of(support::load(path)));
    }
    support::ProgramGen gen(12);
    for (int i = 0; i < 200; ++i) check_scene(scene_of(gen.program(false)));
}

TEST_CASE("layout invariance under HL permutation") {
    support::ProgramGen gen(31);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        auto p = gen.program(false);
        std::vector<std::size_t> hl_idx;
        for (std::size_t k = 0; k < p.statements.size(); ++k) {
            if (std::holds_alternative<dsl::HorizontalLine>(p.statements[k])) hl_idx.push_back(k);
        }
        auto q = p;
        auto order = hl_idx;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t k = 0; k < hl_idx.size(); ++k) q.statements[hl_idx[k]] = p.statements[order[k]];
        CHECK(render_raster(scene_of(p)) == render_raster(scene_of(q)));
        CHECK(render_svg(scene_of(p)) == render_svg(scene_of(q)));
    }
}

TEST_CASE("self-similarity of renders") {
    const auto s = scene_of("HL \"A\" 0 3 -2\nHL \"B\" 1 3\nVL 3 0 1");
    CHECK(render_raster(s) == render_raster(s));
    CHECK(render_svg(s) == render_svg(s));
    CHECK(export_geogebra(s) == export_geogebra(s));
}

TEST_CASE("geogebra export") {
    const std::string one = export_geogebra(scene_of("HL \"A\" 0 3"));
    CHECK(one.find("Segment((0,0),(3,0))") != std::string::npos);
    const std::string two = export_geogebra(scene_of("HL \"A\" 0 3\nHL \"B\" 1 3 -1\nVL 3 0 1"));
    CHECK(two.find("Segment((3,0),(3,-1))") != std::string::npos);
    CHECK(two.find("Segment((3,-1),(4,-1))") != std::string::npos);
    CHECK(two.find("SetLineStyle(bar1_1, 1)") != std::string::npos);
    const std::string braces = export_geogebra(scene_of("HL \"A\" 0 3\nHL \"B\" 1 3\nHB \"h\" N 0 0 3\nVB \"v\" 4 0 1"));
    CHECK(braces.find("Text(\"h\"") != std::string::npos);
    CHECK(braces.find("Text(\"v\"") != std::string::npos);
    for (std::size_t pos = 0; (pos = braces.find('\n', pos)) != std::string::npos; ++pos) {
        CHECK(pos + 1 <= braces.size());
    }
    CHECK(braces.back() == '\n');
}

TEST_CASE("pgm round trip") {
    const auto img = render_raster(scene_of("HL \"A\" 0 3 -2\nHB \"x\" S 0 0 5"));
    const std::string bytes = encode_pgm(img);
    CHECK(bytes.rfind("P5\n", 0) == 0);
    auto back = decode_pgm(bytes);
    REQUIRE(back.ok());
    CHECK(*back == img);
    CHECK_FALSE(decode_pgm("P2\n1 1\n255\n0").ok());
    CHECK_FALSE(decode_pgm(bytes.substr(0, bytes.size() - 1)).ok());
}

TEST_CASE("render config") {
    auto cfg = parse_config("# custom\nunit_px = 50\n dash_pattern = 3,2 \n\nraster_ink=10\n");
    REQUIRE(cfg.ok());
    CHECK(cfg->unit_px == 50);
    CHECK(cfg->dash_on_px == 3);
    CHECK(cfg->dash_off_px == 2);
    CHECK(cfg->raster_ink == 10);
    CHECK(cfg->margin_px == 20);
    CHECK(parse_config("").value() == RenderConfig{});
    CHECK_FALSE(parse_config("unit_px = 0").ok());
    CHECK_FALSE(parse_config("unit_px = -4").ok());
    CHECK_FALSE(parse_config("unit_px = 4.5").ok());
    CHECK_FALSE(parse_config("unknown = 4").ok());
    CHECK_FALSE(parse_config("unit_px").ok());
    CHECK_FALSE(parse_config("raster_ink = 300").ok());
    CHECK_FALSE(parse_config("dash_pattern = 3").ok());
    const auto wide = render_svg(scene_of("HL \"A\" 0 3"), *cfg);
    CHECK(wide.find("width=\"150\"") != std::string::npos);
}

TEST_CASE("dangling references still render") {
    const auto s = scene_of("HL \"A\" 0 3\nHB \"x\" N 4 0 3\nVB \"v\" 5 2 3");
    const std::string svg = render_svg(s);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(ink_count(render_raster(s)) > ink_count(render_raster(scene_of("HL \"A\" 0 3"))));
}

}  // TEST_SUITE

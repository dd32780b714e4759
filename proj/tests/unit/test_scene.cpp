#include <doctest.h>

#include "bardsl/scene/scene.hpp"
#include "support.hpp"

using namespace bardsl;
using namespace bardsl::scene;

namespace {

Scene scene_of(const std::string& text) {
    auto s = build_scene(support::parse_ok(text));
    REQUIRE(s.ok());
    return std::move(s).value();
}

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("signed segments become solid and dashed") {
    const Scene s = scene_of("HL \"A\" 0 3 -2");
    const BarRow* bar = s.bar(0);
    REQUIRE(bar != nullptr);
    CHECK(bar->boundaries == std::vector<double>{0, 3, 5});
    CHECK(bar->total == 5);
    REQUIRE(bar->segments.size() == 2);
    CHECK(bar->segments[0] == BarSegment{3, Stroke::Solid, 0, 3});
    CHECK(bar->segments[1] == BarSegment{2, Stroke::Dashed, 3, 5});
}

TEST_CASE("prefix sums") {
    CHECK(scene_of("HL \"A\" 0 1 1 1").bar(0)->boundaries == std::vector<double>{0, 1, 2, 3});
    CHECK(boundary_set(*scene_of("HL \"A\" 0 1").bar(0)) == std::vector<double>{0, 1});
}

TEST_CASE("duplicate rows") {
    auto s = build_scene(support::parse_ok("HL \"A\" 2 1\nHL \"B\" 2 3"));
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == SceneErrorKind::DuplicateRow);
    CHECK(s.error().statement == 1);
    CHECK(s.error().row == 2);
}

TEST_CASE("unexpanded macro") {
    auto s = build_scene(support::parse_ok("HL \"A\" 0 1\nHL \"B\" 1 3\nCMP \"d\" 0 1"));
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == SceneErrorKind::UnexpandedMacro);
}

TEST_CASE("boundary membership tolerance") {
    const std::vector<double> b{0, 3, 5};
    CHECK(on_boundary(b, 2.9999999));
    CHECK(on_boundary(b, 3.0000009));
    CHECK_FALSE(on_boundary(b, 3.00001));
    CHECK(distance_to_boundary(b, 4.5) == doctest::Approx(0.5));
}

TEST_CASE("dangling references survive") {
    const Scene s = scene_of("HL \"A\" 0 3\nHB \"x\" N 4 0 3\nVL 3 0 7\nVB \"v\" 9 2 5");
    CHECK(s.rows.size() == 1);
    CHECK(s.hbraces.size() == 1);
    CHECK(s.links.size() == 1);
    CHECK(s.vbraces.size() == 1);
    CHECK(s.extent.max_row == 7);
    CHECK(s.extent.max_x == 9);
}

TEST_CASE("extent covers every coordinate") {
    const Scene s = scene_of("HL \"A\" 0 3 -2\nHL \"B\" 3 4\nHB \"h\" S 0 0 12\nVL 2 0 3");
    CHECK(s.extent.max_x == 12);
    CHECK(s.extent.max_row == 3);
}

TEST_CASE("bar row invariants on random programs") {
    support::ProgramGen gen(23);
    for (int i = 0; i < 500; ++i) {
        auto p = gen.program(false);
        auto s = build_scene(p);
        REQUIRE(s.ok());
        for (const auto& [row, bar] : s->rows) {
            REQUIRE(bar.boundaries.size() == bar.segments.size() + 1);
            CHECK(bar.boundaries.front() == 0);
            CHECK(bar.boundaries.back() == bar.total);
            for (std::size_t k = 0; k < bar.segments.size(); ++k) {
                CHECK(bar.boundaries[k] < bar.boundaries[k + 1]);
                CHECK(bar.segments[k].start_x == bar.boundaries[k]);
                CHECK(bar.segments[k].end_x == bar.boundaries[k + 1]);
                CHECK(bar.segments[k].length > 0);
            }
            CHECK(s->extent.max_x >= bar.total);
        }
        for (const auto& hb : s->hbraces) CHECK(s->extent.max_x >= hb.x1);
        for (const auto& vb : s->vbraces) CHECK(s->extent.max_x >= vb.col);
        for (const auto& vl : s->links) CHECK(s->extent.max_x >= vl.x);
    }
}

TEST_CASE("solid iff positive") {
    const Scene s = scene_of("HL \"A\" 0 -1 2 -3.5 0.25");
    const auto& segs = s.bar(0)->segments;
    CHECK(segs[0].style == Stroke::Dashed);
    CHECK(segs[1].style == Stroke::Solid);
    CHECK(segs[2].style == Stroke::Dashed);
    CHECK(segs[3].style == Stroke::Solid);
    CHECK(s.bar(0)->total == doctest::Approx(6.75));
}

TEST_CASE("determinism and row-order independence") {
    const std::string a = "HL \"A\" 0 3 -2\nHL \"B\" 1 5\nVL 5 0 1\nHB \"t\" S 1 0 5";
    const std::string b = "HL \"B\" 1 5\nHL \"A\" 0 3 -2\nVL 5 0 1\nHB \"t\" S 1 0 5";
    const Scene sa = scene_of(a);
    CHECK(sa == scene_of(a));
    const Scene sb = scene_of(b);
    CHECK(sa.bar(0)->boundaries == sb.bar(0)->boundaries);
    CHECK(sa.bar(1)->boundaries == sb.bar(1)->boundaries);
    CHECK(sa.extent == sb.extent);
}

TEST_CASE("debug dump") {
    CHECK(dump(scene_of("HL \"A\" 0 3 -2\nVL 3 0 1\nHB \"x\" N 0 0 5\nVB \"s\" 6 0 1")) ==
          "extent max_x=6 max_row=1\n"
          "row 0 \"A\" total=5 boundaries=0,3,5\n"
          "  seg 0..3 solid\n"
          "  seg 3..5 dashed\n"
          "link x=3 rows=0..1\n"
          "hbrace \"x\" N row=0 x=0..5\n"
          "vbrace \"s\" col=6 rows=0..1\n");
}

}  // TEST_SUITE
